"""Damage events, scenarios and sampled trajectories."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import TYPE_CHECKING, Sequence, Union

import numpy as np

from ._backend import MODE_DOUBLE, MODE_LINEAR, kernels
from .complexity import (
    DEFAULT_HORIZON,
    DoubleExponential,
    GrowthParams,
    LinearExponent,
    WeakeningMode,
    base_log2,
    neuron_count,
)
from .errors import ScenarioError, UsageError

if TYPE_CHECKING:
    from .cognition import CognitionParams


@dataclass(frozen=True)
class SuddenLoss:
    """Instantaneous loss of ``fraction`` of the neurons at ``month``."""

    month: float
    fraction: float

    @property
    def onset(self) -> float:
        return self.month


@dataclass(frozen=True)
class SustainedLoss:
    """Continuous compounding loss of ``monthly_rate`` per month from ``start_month``."""

    start_month: float
    monthly_rate: float

    @property
    def onset(self) -> float:
        return self.start_month


DamageEvent = Union[SuddenLoss, SustainedLoss]


@dataclass(frozen=True)
class Scenario:
    growth: GrowthParams
    mode: WeakeningMode
    events: tuple[DamageEvent, ...] = ()
    label: str = "baseline"
    horizon: float = DEFAULT_HORIZON

    def __post_init__(self) -> None:
        object.__setattr__(self, "events", tuple(self.events))

    def with_event(self, event: DamageEvent, label: str | None = None) -> "Scenario":
        """Copy with ``event`` added, keeping events ordered by onset."""
        events = sorted((*self.events, event), key=lambda e: e.onset)
        return replace(self, events=tuple(events), label=label or self.label)

    def with_growth(self, growth: GrowthParams) -> "Scenario":
        return replace(self, growth=growth)


@dataclass
class Trajectory:
    months: np.ndarray
    log2_complexity: np.ndarray
    cognitive_depth: np.ndarray | None = None
    scenario_label: str = ""

    def __post_init__(self) -> None:
        self.months = np.asarray(self.months, dtype=np.float64)
        self.log2_complexity = np.asarray(self.log2_complexity, dtype=np.float64)
        if self.cognitive_depth is not None:
            self.cognitive_depth = np.asarray(self.cognitive_depth, dtype=np.float64)
        n = len(self.months)
        if len(self.log2_complexity) != n or (
                self.cognitive_depth is not None and len(self.cognitive_depth) != n):
            raise ValueError("trajectory series must have equal length")
        if n > 1 and not np.all(np.diff(self.months) > 0):
            raise ValueError("trajectory months must be strictly increasing")

    def __len__(self) -> int:
        return len(self.months)


@dataclass
class ValidationReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def raise_if_invalid(self) -> None:
        if self.violations:
            raise ScenarioError(self.violations)


def _is_real(x: object) -> bool:
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def validate_scenario(scenario: Scenario) -> ValidationReport:
    """Collect every invariant violation of ``scenario`` without raising."""
    report = ValidationReport()
    add = report.violations.append
    if not isinstance(scenario.growth, GrowthParams):
        add("growth is not a GrowthParams")
    if not isinstance(scenario.mode, (LinearExponent, DoubleExponential)):
        add("mode is not a weakening mode")
    if not (_is_real(scenario.horizon) and scenario.horizon > 0):
        add("horizon must be > 0")
    sustained = 0
    onsets = []
    for i, ev in enumerate(scenario.events):
        if isinstance(ev, SuddenLoss):
            if not (_is_real(ev.fraction) and 0 < ev.fraction < 1):
                add(f"events[{i}]: fraction out of (0,1): {ev.fraction!r}")
        elif isinstance(ev, SustainedLoss):
            sustained += 1
            if not (_is_real(ev.monthly_rate) and 0 < ev.monthly_rate < 1):
                add(f"events[{i}]: monthly_rate out of (0,1): {ev.monthly_rate!r}")
        else:
            add(f"events[{i}]: unknown event type {type(ev).__name__}")
            continue
        onset = ev.onset
        if not _is_real(onset):
            add(f"events[{i}]: onset month is not a finite number: {onset!r}")
            continue
        if onset < 0:
            add(f"events[{i}]: negative onset month {onset}")
        elif _is_real(scenario.horizon) and onset > scenario.horizon:
            add(f"events[{i}]: onset month {onset} beyond horizon {scenario.horizon}")
        onsets.append(onset)
    if sustained > 1:
        add("multiple sustained-loss events")
    if any(a > b for a, b in zip(onsets, onsets[1:])):
        add("events not sorted by onset month")
    return report


def damage_factor(t: float, events: Sequence[DamageEvent]) -> float:
    """Multiplicative factor on the baseline neuron count at month ``t``."""
    factor = 1.0
    for ev in events:
        if isinstance(ev, SuddenLoss):
            if t >= ev.month:
                factor *= 1.0 - ev.fraction
        elif t > ev.start_month:
            factor *= math.exp((t - ev.start_month) * math.log1p(-ev.monthly_rate))
    return factor


def effective_neurons(t: float, scenario: Scenario) -> float:
    return neuron_count(t, scenario.growth) * damage_factor(t, scenario.events)


def log2_complexity(t: float, scenario: Scenario) -> float:
    """log2 of the number of firing states at month ``t``.

    Damage lowers this value only while ``base_log2(t) >= 0``; past that point
    each neuron contributes fewer than one state and the sign flips.
    """
    return effective_neurons(t, scenario) * base_log2(t, scenario.mode)


def log2_complexity_grid(months: np.ndarray, scenario: Scenario) -> np.ndarray:
    """Vectorised :func:`log2_complexity` through the selected kernel backend."""
    g, mode = scenario.growth, scenario.mode
    sudden = [e for e in scenario.events if isinstance(e, SuddenLoss)]
    sustained = [e for e in scenario.events if isinstance(e, SustainedLoss)]
    if isinstance(mode, LinearExponent):
        kind, h, tau = MODE_LINEAR, mode.h, 1.0
    else:
        kind, h, tau = MODE_DOUBLE, mode.h, mode.tau
    sus_start, sus_rate = (sustained[0].start_month, sustained[0].monthly_rate) if sustained else (math.nan, 0.0)
    return kernels.complexity_grid(
        np.asarray(months, dtype=np.float64), float(g.n_max), float(g.b), float(g.tau_g),
        kind, float(h), float(tau),
        np.array([e.month for e in sudden], dtype=np.float64),
        np.array([e.fraction for e in sudden], dtype=np.float64),
        float(sus_start), float(sus_rate),
    )


def sample_grid(t_start: float, t_end: float, step: float) -> np.ndarray:
    """``t_start, t_start + step, ...`` always ending exactly at ``t_end``."""
    if not (math.isfinite(t_start) and math.isfinite(t_end) and math.isfinite(step)):
        raise UsageError("sampling range and step must be finite")
    if not t_start < t_end:
        raise UsageError(f"t_start ({t_start}) must be < t_end ({t_end})")
    if not step > 0:
        raise UsageError(f"step must be > 0, got {step}")
    n = int(math.floor((t_end - t_start) / step + 1e-9))
    months = t_start + step * np.arange(n + 1, dtype=np.float64)
    if t_end - months[-1] > 1e-9 * max(1.0, abs(t_end)):
        months = np.append(months, t_end)
    else:
        months[-1] = t_end
    return months


def simulate(scenario: Scenario, t_start: float = 0.0, t_end: float | None = None,
             step: float = 1.0, cognition: "CognitionParams | None" = None) -> Trajectory:
    validate_scenario(scenario).raise_if_invalid()
    if t_end is None:
        t_end = scenario.horizon
    months = sample_grid(t_start, t_end, step)
    values = log2_complexity_grid(months, scenario)
    depth = None
    if cognition is not None:
        from .cognition import cognitive_depth_grid
        depth = cognitive_depth_grid(months, cognition, scenario, complexity=values)
    return Trajectory(months, values, depth, scenario.label)
