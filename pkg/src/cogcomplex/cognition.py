"""Cognitive depth and its clipping against the complexity curve.

Depth is expressed in the same log2-states units as complexity, so ``k``
carries the whole unit conversion and ``min(depth, complexity)`` is meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .complexity import DEFAULT_HORIZON, GrowthParams
from .errors import ConfigurationError, ParameterError
from .scenarios import Scenario, log2_complexity, log2_complexity_grid

#: knowledge models take (t, params) and must accept scalar or ndarray ``t``
KnowledgeModel = Callable[[object, "CognitionParams"], object]


def _exponential_knowledge(t, params: "CognitionParams"):
    return params.K0 * np.exp(params.lam * np.asarray(t, dtype=np.float64))


KNOWLEDGE_MODELS: dict[str, KnowledgeModel] = {"exponential": _exponential_knowledge}


def register_knowledge_model(name: str, model: KnowledgeModel) -> None:
    KNOWLEDGE_MODELS[name] = model


@dataclass(frozen=True)
class CognitionParams:
    k: float
    lam: float
    E: float = 1.0
    l: float = 0.0
    K0: float = 1.0
    knowledge_model: str = "exponential"

    def __post_init__(self) -> None:
        for name in ("k", "lam", "E", "K0"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ParameterError(f"{name} must be finite and > 0, got {v!r}")
        if not (math.isfinite(self.l) and self.l >= 0):
            raise ParameterError(f"l must be finite and >= 0, got {self.l!r}")
        if self.knowledge_model not in KNOWLEDGE_MODELS:
            raise ParameterError(f"unknown knowledge model {self.knowledge_model!r}")


def _growth_arrays(t: np.ndarray, growth: GrowthParams) -> tuple[np.ndarray, np.ndarray]:
    inner = growth.b * np.exp(-t / growth.tau_g)
    n = growth.n_max * np.exp(-inner)
    return n, n * inner / growth.tau_g


def max_growth_product(growth: GrowthParams, horizon: float = DEFAULT_HORIZON) -> float:
    """Maximum of ``N(t) * N'(t)`` over ``[0, horizon]``.

    With ``u = b*exp(-t/tau_g)`` the product is ``n_max**2 * u*exp(-2u) / tau_g``,
    maximal at ``u = 1/2``; ``u`` sweeps ``[b*exp(-horizon/tau_g), b]``.
    """
    u_hi = growth.b
    u_lo = growth.b * math.exp(-horizon / growth.tau_g)
    u = min(max(0.5, u_lo), u_hi)
    return growth.n_max ** 2 * u * math.exp(-2.0 * u) / growth.tau_g


def default_coupling(growth: GrowthParams, horizon: float = DEFAULT_HORIZON, E: float = 1.0) -> float:
    """Coupling ``l`` leaving the depth bracket at least ``E/2`` over the horizon."""
    return 0.5 * E / max_growth_product(growth, horizon)


def knowledge(t: float, params: CognitionParams) -> float:
    return float(KNOWLEDGE_MODELS[params.knowledge_model](t, params))


def check_bracket(params: CognitionParams, growth: GrowthParams,
                  horizon: float = DEFAULT_HORIZON, step: float = 1.0) -> None:
    """Raise :class:`ConfigurationError` at the earliest grid month where ``E - l*N*N'`` <= 0."""
    t = np.arange(0.0, horizon + step / 2, step)
    n, dn = _growth_arrays(t, growth)
    bad = np.nonzero(params.E - params.l * n * dn <= 0)[0]
    if bad.size:
        month = float(t[bad[0]])
        raise ConfigurationError(f"depth bracket E - l*N*dN/dt is non-positive at month {month:g}", month)


def depth_bracket(t: float, E: float, l: float, growth: GrowthParams) -> float:
    """``E - l * N(t) * N'(t)``."""
    inner = growth.b * math.exp(-t / growth.tau_g) if t != math.inf else 0.0
    n = growth.n_max * math.exp(-inner)
    return E - l * n * (n * inner / growth.tau_g)


def cognitive_depth_raw(t: float, params: CognitionParams, growth: GrowthParams) -> float:
    bracket = depth_bracket(t, params.E, params.l, growth)
    if bracket <= 0:
        raise ConfigurationError(f"depth bracket E - l*N*dN/dt is non-positive at month {t:g}", t)
    return params.k * knowledge(t, params) * bracket


def cognitive_depth(t: float, params: CognitionParams, scenario: Scenario) -> float:
    """Raw depth clipped from above by the complexity curve."""
    return min(cognitive_depth_raw(t, params, scenario.growth), log2_complexity(t, scenario))


def cognitive_depth_raw_grid(months: np.ndarray, params: CognitionParams, growth: GrowthParams) -> np.ndarray:
    t = np.asarray(months, dtype=np.float64)
    n, dn = _growth_arrays(t, growth)
    bracket = params.E - params.l * n * dn
    bad = np.nonzero(bracket <= 0)[0]
    if bad.size:
        month = float(t[bad[0]])
        raise ConfigurationError(f"depth bracket E - l*N*dN/dt is non-positive at month {month:g}", month)
    return params.k * np.asarray(KNOWLEDGE_MODELS[params.knowledge_model](t, params)) * bracket


def cognitive_depth_grid(months: np.ndarray, params: CognitionParams, scenario: Scenario,
                         complexity: np.ndarray | None = None) -> np.ndarray:
    if complexity is None:
        complexity = log2_complexity_grid(months, scenario)
    return np.minimum(cognitive_depth_raw_grid(months, params, scenario.growth), complexity)
