"""Peak search, equivalent-age inversion and parameter calibration.

Every solver here is deterministic: fixed scans, golden-section search,
bisection, and a damped Newton iteration with a central-difference Jacobian.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .cognition import (
    CognitionParams,
    check_bracket,
    cognitive_depth_raw,
    cognitive_depth_raw_grid,
    default_coupling,
    depth_bracket,
)
from .complexity import (
    DEFAULT_H,
    DEFAULT_HORIZON,
    DoubleExponential,
    GrowthParams,
    LinearExponent,
    WeakeningMode,
    base_log2,
    base_log2_derivative,
)
from .errors import (
    AboveRangeError,
    BelowRangeError,
    BracketError,
    CalibrationError,
    ConvergenceError,
    ParameterError,
    ShapeError,
)
from .scenarios import Scenario, log2_complexity, log2_complexity_grid, sample_grid

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0

#: newborn cognitive depth as a fraction of newborn complexity
NEWBORN_DEPTH_FRACTION = 0.05
DEFAULT_N_MAX = 1e6


@dataclass(frozen=True)
class RootFindConfig:
    abs_tol: float = 1e-3
    max_iter: int = 200
    bracket_expansion: float = 1.6

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0):
            raise ParameterError("abs_tol must be > 0")
        if self.max_iter < 1:
            raise ParameterError("max_iter must be >= 1")
        if not (self.bracket_expansion > 1):
            raise ParameterError("bracket_expansion must be > 1")


@dataclass(frozen=True)
class CalibrationTargets:
    peak_month: float = 300.0
    baseline_equiv: tuple[float, float] = (1000.0, 138.0)
    exp_weaken_equiv: tuple[float, float] = (1000.0, 97.0)
    intersection_month: float = 600.0
    horizon: float = DEFAULT_HORIZON

    def __post_init__(self) -> None:
        object.__setattr__(self, "baseline_equiv", tuple(float(x) for x in self.baseline_equiv))
        object.__setattr__(self, "exp_weaken_equiv", tuple(float(x) for x in self.exp_weaken_equiv))
        problems = []
        months = [self.peak_month, *self.baseline_equiv, *self.exp_weaken_equiv, self.intersection_month]
        if any(not (0 <= m <= self.horizon) for m in months):
            problems.append("all target months must lie within [0, horizon]")
        for name, (_, eq) in (("baseline_equiv", self.baseline_equiv), ("exp_weaken_equiv", self.exp_weaken_equiv)):
            if not eq < self.peak_month:
                problems.append(f"{name} equivalent month must precede the peak month")
        if problems:
            raise ParameterError("; ".join(problems))


# -- generic solvers ---------------------------------------------------------

def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float,
                       max_iter: int = 200) -> float:
    """Maximiser of a unimodal ``f`` on ``[a, b]`` to within ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= tol:
            return 0.5 * (a + b)
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    raise ConvergenceError(f"golden-section search did not reach tol={tol} in {max_iter} iterations")


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int = 200) -> float:
    """Root of ``f`` in ``[lo, hi]`` given a sign change; returns the bracket midpoint."""
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo
    if fhi == 0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ShapeError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        if hi - lo <= tol:
            return 0.5 * (lo + hi)
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not reach tol={tol} in {max_iter} iterations")


# -- inverse queries ----------------------------------------------------------

def find_peak(scenario: Scenario, cfg: RootFindConfig = RootFindConfig(), scan_step: float = 1.0) -> float:
    """Month of the interior maximum of the complexity curve."""
    months = sample_grid(0.0, scenario.horizon, scan_step)
    values = log2_complexity_grid(months, scenario)
    i = int(np.argmax(values))
    if i == 0:
        raise ShapeError("complexity curve has no interior maximum (maximum at month 0)")
    if i == len(months) - 1:
        raise ShapeError(f"complexity curve has no interior maximum (maximum at horizon {scenario.horizon:g})")
    return float(golden_section_max(lambda t: log2_complexity(t, scenario), float(months[i - 1]),
                                    float(months[i + 1]), cfg.abs_tol, cfg.max_iter))


def equivalent_age(scenario: Scenario, query_month: float, baseline: Scenario,
                   cfg: RootFindConfig = RootFindConfig(), *, peak: float | None = None) -> float:
    """Month on the baseline's ascending branch matching ``scenario`` at ``query_month``."""
    value = log2_complexity(query_month, scenario)
    return invert_ascending(value, baseline, cfg, peak=peak)


def invert_ascending(value: float, baseline: Scenario, cfg: RootFindConfig = RootFindConfig(),
                     *, peak: float | None = None) -> float:
    if peak is None:
        peak = find_peak(baseline, cfg)
    low, high = log2_complexity(0.0, baseline), log2_complexity(peak, baseline)
    if value > high:
        raise AboveRangeError(f"complexity {value:.9g} exceeds the baseline peak {high:.9g}", value, low, high)
    if value < low:
        raise BelowRangeError(f"complexity {value:.9g} is below the baseline at month 0 ({low:.9g})",
                              value, low, high)
    return float(bisect(lambda t: log2_complexity(t, baseline) - value, 0.0, peak, cfg.abs_tol, cfg.max_iter))


def find_intersection(params: CognitionParams, scenario: Scenario, cfg: RootFindConfig = RootFindConfig(),
                      scan_step: float = 1.0) -> float:
    """Month where raw cognitive depth first meets the complexity curve."""
    months = sample_grid(0.0, scenario.horizon, scan_step)
    gap = cognitive_depth_raw_grid(months, params, scenario.growth) - log2_complexity_grid(months, scenario)
    above = gap >= 0
    idx = np.nonzero(above[1:] != above[:-1])[0]
    if len(idx) != 1:
        crossings = [float(0.5 * (months[i] + months[i + 1])) for i in idx]
        raise ShapeError(f"expected exactly one crossing of depth and complexity, found {len(idx)}", crossings)
    i = int(idx[0])
    return float(bisect(lambda t: cognitive_depth_raw(t, params, scenario.growth) - log2_complexity(t, scenario),
                        float(months[i]), float(months[i + 1]), cfg.abs_tol, cfg.max_iter))


# -- calibration ----------------------------------------------------------------

@dataclass
class GrowthFit:
    growth: GrowthParams
    residuals: dict[str, float]
    iterations: int
    method: str


def peak_constrained_b(tau_g: float, peak_month: float, mode: WeakeningMode) -> float:
    """Gompertz ``b`` making ``peak_month`` a stationary point of log complexity."""
    base = base_log2(peak_month, mode)
    slope = base_log2_derivative(peak_month, mode)
    if base <= 0 or slope >= 0:
        raise ShapeError("weakening mode admits no interior peak at the target month")
    return tau_g * math.exp(peak_month / tau_g) * (-slope / base)


def _growth_residuals(x: np.ndarray, targets: CalibrationTargets, mode: WeakeningMode, n_max: float,
                      inner: RootFindConfig) -> np.ndarray:
    growth = GrowthParams(n_max, math.exp(x[0]), math.exp(x[1]))
    scenario = Scenario(growth, mode, horizon=targets.horizon)
    peak = find_peak(scenario, inner)
    query, equiv = targets.baseline_equiv
    age = equivalent_age(scenario, query, scenario, inner, peak=peak)
    return np.array([peak - targets.peak_month, age - equiv])


def _scan_tau_g(targets: CalibrationTargets, mode: WeakeningMode, n_max: float) -> tuple[float, float]:
    """Bracket ``tau_g`` along the peak-constraint curve by the sign of C(query) - C(equiv)."""
    query, equiv = targets.baseline_equiv

    def gap(tau_g: float) -> float:
        b = peak_constrained_b(tau_g, targets.peak_month, mode)
        if not (math.isfinite(b) and b < 1e300):
            return math.nan
        s = Scenario(GrowthParams(n_max, b, tau_g), mode, horizon=targets.horizon)
        return log2_complexity(query, s) - log2_complexity(equiv, s)

    taus = np.logspace(0.0, 4.0, 161)
    gaps = [gap(t) for t in taus]
    for lo, hi, glo, ghi in zip(taus, taus[1:], gaps, gaps[1:]):
        if math.isfinite(glo) and math.isfinite(ghi) and (glo > 0) != (ghi > 0):
            return float(lo), float(hi)
    raise CalibrationError("no Gompertz time constant in [1, 1e4] months satisfies both growth anchors")


def _fit_growth(targets: CalibrationTargets, h: float, cfg: RootFindConfig,
                n_max: float = DEFAULT_N_MAX, mode: WeakeningMode | None = None) -> GrowthFit:
    mode = mode if mode is not None else LinearExponent(h)
    inner = replace(cfg, abs_tol=min(cfg.abs_tol, 1e-7) / 10)
    tau_lo, tau_hi = _scan_tau_g(targets, mode, n_max)
    tau0 = math.sqrt(tau_lo * tau_hi)
    x = np.array([math.log(peak_constrained_b(tau0, targets.peak_month, mode)), math.log(tau0)])

    def residuals(x: np.ndarray) -> np.ndarray:
        try:
            return _growth_residuals(x, targets, mode, n_max, inner)
        except (ShapeError, AboveRangeError, BelowRangeError, ConvergenceError, ParameterError):
            return np.full(2, math.inf)

    r = residuals(x)
    step = 1e-3
    for it in range(1, cfg.max_iter + 1):
        if np.all(np.abs(r) < cfg.abs_tol):
            g = GrowthParams(n_max, math.exp(x[0]), math.exp(x[1]))
            return GrowthFit(g, {"peak_month": float(r[0]), "baseline_equiv": float(r[1])}, it - 1, "newton")
        if not np.all(np.isfinite(r)):
            break
        jac = np.empty((2, 2))
        for j in range(2):
            dx = np.zeros(2)
            dx[j] = step
            jac[:, j] = (residuals(x + dx) - residuals(x - dx)) / (2 * step)
        if not np.all(np.isfinite(jac)):
            break
        try:
            delta = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            break
        norm = np.max(np.abs(r))
        damping = 1.0
        for _ in range(30):
            trial = x + damping * delta
            rt = residuals(trial)
            if np.all(np.isfinite(rt)) and np.max(np.abs(rt)) < norm:
                x, r = trial, rt
                break
            damping *= 0.5
        else:
            break
    return _fit_growth_bisection(targets, mode, n_max, cfg, inner, (tau_lo, tau_hi))


def _fit_growth_bisection(targets, mode, n_max, cfg, inner, bracket) -> GrowthFit:
    """Fallback: bisect ``log tau_g`` with ``b`` pinned by the peak constraint."""
    query, equiv = targets.baseline_equiv
    count = 0

    def gap(log_tau: float) -> float:
        nonlocal count
        count += 1
        tau_g = math.exp(log_tau)
        s = Scenario(GrowthParams(n_max, peak_constrained_b(tau_g, targets.peak_month, mode), tau_g), mode,
                     horizon=targets.horizon)
        return log2_complexity(query, s) - log2_complexity(equiv, s)

    log_tau = bisect(gap, math.log(bracket[0]), math.log(bracket[1]), 1e-12, cfg.max_iter)
    tau_g = math.exp(log_tau)
    x = np.array([math.log(peak_constrained_b(tau_g, targets.peak_month, mode)), log_tau])
    r = _growth_residuals(x, targets, mode, n_max, inner)
    residuals = {"peak_month": float(r[0]), "baseline_equiv": float(r[1])}
    if not np.all(np.abs(r) < cfg.abs_tol):
        raise CalibrationError("growth calibration did not converge", residuals)
    return GrowthFit(GrowthParams(n_max, math.exp(x[0]), tau_g), residuals, count, "bisection")


def calibrate_growth(targets: CalibrationTargets = CalibrationTargets(), h: float = DEFAULT_H,
                     cfg: RootFindConfig = RootFindConfig(), n_max: float = DEFAULT_N_MAX) -> GrowthParams:
    """Fit Gompertz ``(b, tau_g)`` to the peak-month and baseline equivalent-age anchors."""
    return _fit_growth(targets, h, cfg, n_max).growth


def calibrate_weakening_tau(growth: GrowthParams, h: float = DEFAULT_H,
                            target: tuple[float, float] = (1000.0, 97.0),
                            cfg: RootFindConfig = RootFindConfig(), *, baseline_h: float = DEFAULT_H,
                            horizon: float = DEFAULT_HORIZON) -> float:
    """``tau`` of the double-exponential mode whose curve at ``target[0]`` matches baseline month ``target[1]``."""
    query, equiv = target
    baseline = Scenario(growth, LinearExponent(baseline_h), horizon=horizon)
    wanted = log2_complexity(equiv, baseline)

    def value(log_tau: float) -> float:
        s = Scenario(growth, DoubleExponential(h, math.exp(log_tau)), horizon=horizon)
        return log2_complexity(query, s) - wanted

    log_lo = log_hi = math.log(max(query, 1.0) / 4.0)
    grow = math.log(cfg.bracket_expansion)
    limit = math.log(1e12)
    while value(log_lo) > 0 and log_lo > -limit:
        log_lo -= grow
    while value(log_hi) < 0 and log_hi < limit:
        log_hi += grow
    if value(log_lo) > 0 or value(log_hi) < 0:
        attained = (log2_complexity(query, Scenario(growth, DoubleExponential(h, math.exp(log_lo)))),
                    log2_complexity(query, Scenario(growth, DoubleExponential(h, math.exp(log_hi)))))
        raise BracketError(f"target equivalent month {equiv:g} unattainable: complexity at month {query:g} "
                           f"spans [{attained[0]:.9g}, {attained[1]:.9g}] but {wanted:.9g} is required",
                           attained)
    return math.exp(bisect(value, log_lo, log_hi, 1e-12, cfg.max_iter))


def calibrate_cognition(growth: GrowthParams, mode: WeakeningMode, intersection_month: float = 600.0,
                        cfg: RootFindConfig = RootFindConfig(), *, horizon: float = DEFAULT_HORIZON,
                        newborn_fraction: float = NEWBORN_DEPTH_FRACTION, E: float = 1.0,
                        K0: float = 1.0) -> CognitionParams:
    """Solve ``(k, lam)`` so depth starts at ``newborn_fraction`` of complexity and meets it at the target month.

    Both conditions are linear in ``(log k, lam)`` for exponential knowledge,
    so the solve is closed form.
    """
    baseline = Scenario(growth, mode, horizon=horizon)
    l = default_coupling(growth, horizon, E)
    k = newborn_fraction * log2_complexity(0.0, baseline) / (K0 * depth_bracket(0.0, E, l, growth))
    ratio = log2_complexity(intersection_month, baseline) / (
        k * K0 * depth_bracket(intersection_month, E, l, growth))
    if not ratio > 1:
        raise CalibrationError("complexity at the target month does not exceed the newborn depth",
                               {"ratio": ratio})
    params = CognitionParams(k=k, lam=math.log(ratio) / intersection_month, E=E, l=l, K0=K0)
    check_bracket(params, growth, horizon)
    return params


@dataclass
class Calibration:
    """Every calibrated quantity plus the diagnostics written to the params file."""

    targets: CalibrationTargets
    h: float
    growth: GrowthParams
    weakening_tau: float
    cognition: CognitionParams
    residuals: dict[str, float] = field(default_factory=dict)
    iterations: dict[str, int] = field(default_factory=dict)

    @property
    def linear_mode(self) -> LinearExponent:
        return LinearExponent(self.h)

    @property
    def double_mode(self) -> DoubleExponential:
        return DoubleExponential(self.h, self.weakening_tau)

    def baseline(self) -> Scenario:
        return Scenario(self.growth, self.linear_mode, label="baseline", horizon=self.targets.horizon)


def calibrate(targets: CalibrationTargets = CalibrationTargets(), h: float = DEFAULT_H,
              cfg: RootFindConfig = RootFindConfig(), n_max: float = DEFAULT_N_MAX) -> Calibration:
    fit = _fit_growth(targets, h, cfg, n_max)
    growth = fit.growth
    tau = calibrate_weakening_tau(growth, h, targets.exp_weaken_equiv, cfg, baseline_h=h, horizon=targets.horizon)
    cognition = calibrate_cognition(growth, LinearExponent(h), targets.intersection_month, cfg,
                                    horizon=targets.horizon)
    cal = Calibration(targets, h, growth, tau, cognition, dict(fit.residuals), {"growth": fit.iterations})
    baseline = cal.baseline()
    query, equiv = targets.exp_weaken_equiv
    weakened = Scenario(growth, cal.double_mode, horizon=targets.horizon)
    cal.residuals["exp_weaken_equiv"] = equivalent_age(weakened, query, baseline, cfg) - equiv
    cal.residuals["intersection_month"] = find_intersection(cognition, baseline, cfg) - targets.intersection_month
    return cal
