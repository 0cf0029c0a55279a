"""Neuron growth law and per-neuron weakening modes.

All complexity values live in the log2 domain: a network of ``N`` fully
interconnected neurons whose per-neuron base is ``2*w(t)`` has ``(2*w)**N``
firing states, which we store as ``N * log2(2*w)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import ParameterError

LOG2E = math.log2(math.e)

#: per-month aging rate of the linear-exponent mode
DEFAULT_H = 0.0001 / 15
DEFAULT_HORIZON = 1200.0


def _finite_positive(name: str, value: float) -> None:
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ParameterError(f"{name} must be a finite number > 0, got {value!r}")


@dataclass(frozen=True)
class GrowthParams:
    """Gompertz neuron-count curve ``n_max * exp(-b * exp(-t / tau_g))``."""

    n_max: float
    b: float
    tau_g: float

    def __post_init__(self) -> None:
        _finite_positive("n_max", self.n_max)
        _finite_positive("b", self.b)
        _finite_positive("tau_g", self.tau_g)

    def scaled(self, factor: float) -> "GrowthParams":
        return GrowthParams(self.n_max * factor, self.b, self.tau_g)


@dataclass(frozen=True)
class LinearExponent:
    """Per-neuron base ``2 * exp(-h * t)``; ``h`` is per month."""

    h: float = DEFAULT_H

    def __post_init__(self) -> None:
        if not (math.isfinite(self.h) and self.h >= 0):
            raise ParameterError(f"h must be finite and >= 0, got {self.h!r}")

    kind = "linear_exponent"


@dataclass(frozen=True)
class DoubleExponential:
    """Per-neuron base ``2 * exp(-h * (exp(t / tau) - 1))``; ``h`` is dimensionless."""

    h: float
    tau: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.h) and self.h >= 0):
            raise ParameterError(f"h must be finite and >= 0, got {self.h!r}")
        _finite_positive("tau", self.tau)

    kind = "double_exponential"


WeakeningMode = Union[LinearExponent, DoubleExponential]


def neuron_count(t: float, growth: GrowthParams) -> float:
    if t == math.inf:
        return float(growth.n_max)
    return growth.n_max * math.exp(-growth.b * math.exp(-t / growth.tau_g))


def neuron_count_derivative(t: float, growth: GrowthParams) -> float:
    """Analytic dN/dt of :func:`neuron_count`, in neurons per month."""
    if t == math.inf:
        return 0.0
    inner = growth.b * math.exp(-t / growth.tau_g)
    return growth.n_max * math.exp(-inner) * inner / growth.tau_g


def base_log2(t: float, mode: WeakeningMode) -> float:
    """log2 of the per-neuron base at month ``t``; exactly 1 at ``t = 0``."""
    if isinstance(mode, LinearExponent):
        return 1.0 - mode.h * t * LOG2E
    if isinstance(mode, DoubleExponential):
        if mode.h == 0:
            return 1.0
        try:
            return 1.0 - mode.h * math.expm1(t / mode.tau) * LOG2E
        except OverflowError:
            return -math.inf
    raise ParameterError(f"unknown weakening mode {mode!r}")


def base_log2_derivative(t: float, mode: WeakeningMode) -> float:
    if isinstance(mode, LinearExponent):
        return -mode.h * LOG2E
    if isinstance(mode, DoubleExponential):
        if mode.h == 0:
            return 0.0
        try:
            return -mode.h * math.exp(t / mode.tau) / mode.tau * LOG2E
        except OverflowError:
            return -math.inf
    raise ParameterError(f"unknown weakening mode {mode!r}")
