import math
import time
from dataclasses import replace

import numpy as np
import pytest

from cogcomplex.calibration import (
    CalibrationTargets,
    RootFindConfig,
    _fit_growth,
    _fit_growth_bisection,
    _scan_tau_g,
    bisect,
    calibrate,
    calibrate_cognition,
    calibrate_growth,
    calibrate_weakening_tau,
    equivalent_age,
    find_intersection,
    find_peak,
    golden_section_max,
)
from cogcomplex.cognition import CognitionParams, cognitive_depth_raw, cognitive_depth_raw_grid
from cogcomplex.complexity import DEFAULT_H, DoubleExponential, GrowthParams, LinearExponent
from cogcomplex.errors import (
    AboveRangeError,
    BelowRangeError,
    BracketError,
    ConvergenceError,
    ParameterError,
    ShapeError,
)
from cogcomplex.scenarios import Scenario, log2_complexity, log2_complexity_grid

CFG = RootFindConfig()
MONTHS = np.arange(0.0, 1201.0)


def test_golden_section_and_bisect():
    assert golden_section_max(lambda x: -(x - 1.234) ** 2, 0.0, 5.0, 1e-8) == pytest.approx(1.234, abs=1e-8)
    assert bisect(lambda x: x * x - 2, 0.0, 2.0, 1e-12) == pytest.approx(math.sqrt(2), abs=1e-12)
    with pytest.raises(ShapeError):
        bisect(lambda x: x * x + 1, 0.0, 2.0, 1e-6)
    with pytest.raises(ConvergenceError):
        bisect(lambda x: x - 0.3, 0.0, 1.0, 1e-12, max_iter=5)
    with pytest.raises(ConvergenceError):
        golden_section_max(lambda x: -x * x, -1.0, 1.0, 1e-12, max_iter=5)


def test_root_find_config_validation():
    with pytest.raises(ParameterError):
        RootFindConfig(abs_tol=0)
    with pytest.raises(ParameterError):
        RootFindConfig(max_iter=0)


def test_targets_validation():
    with pytest.raises(ParameterError):
        CalibrationTargets(baseline_equiv=(1000.0, 350.0))
    with pytest.raises(ParameterError):
        CalibrationTargets(intersection_month=5000.0)


def test_find_peak_calibrated(baseline):
    assert find_peak(baseline, CFG) == pytest.approx(300.0, abs=CFG.abs_tol)


def test_find_peak_invariant_to_scan_step(baseline):
    ref = find_peak(baseline, CFG)
    for step in (0.5, 1.0, 2.0, 3.0, 5.0):
        assert find_peak(baseline, CFG, scan_step=step) == pytest.approx(ref, abs=2 * CFG.abs_tol)


def test_find_peak_shape_errors():
    constant = GrowthParams(1e3, 1e-300, 1e-3)
    with pytest.raises(ShapeError, match="month 0"):
        find_peak(Scenario(constant, LinearExponent(DEFAULT_H)))
    with pytest.raises(ShapeError, match="horizon"):
        find_peak(Scenario(GrowthParams(1e6, 0.08, 61.0), LinearExponent(0.0)))


def test_equivalent_age_identity(baseline):
    peak = find_peak(baseline)
    for t in np.linspace(0.5, peak - 0.5, 25):
        assert equivalent_age(baseline, t, baseline) == pytest.approx(t, abs=CFG.abs_tol)


def test_equivalent_age_baseline_anchor(baseline):
    assert equivalent_age(baseline, 1000.0, baseline) == pytest.approx(138.0, abs=1.0)


def test_equivalent_age_range_errors(baseline, scenarios):
    bigger = baseline.with_growth(baseline.growth.scaled(1.1))
    with pytest.raises(AboveRangeError):
        equivalent_age(bigger, 300.0, baseline)
    with pytest.raises(BelowRangeError) as info:
        equivalent_age(scenarios["sustained"], 1000.0, baseline)
    assert info.value.value < info.value.low


def test_growth_residuals_and_peak(calibration):
    assert all(abs(calibration.residuals[k]) < CFG.abs_tol for k in ("peak_month", "baseline_equiv"))
    assert find_peak(calibration.baseline()) == pytest.approx(300.0, abs=1.0)


def test_growth_calibration_scale_invariant(calibration):
    g7 = calibrate_growth(n_max=1e7)
    assert g7.b == pytest.approx(calibration.growth.b, rel=1e-6)
    assert g7.tau_g == pytest.approx(calibration.growth.tau_g, rel=1e-6)


def test_bisection_fallback_agrees_with_newton():
    targets = CalibrationTargets()
    mode = LinearExponent(DEFAULT_H)
    inner = RootFindConfig(abs_tol=1e-8)
    newton = _fit_growth(targets, DEFAULT_H, CFG)
    fallback = _fit_growth_bisection(targets, mode, 1e6, CFG, inner, _scan_tau_g(targets, mode, 1e6))
    assert newton.method == "newton" and fallback.method == "bisection"
    assert fallback.growth.tau_g == pytest.approx(newton.growth.tau_g, rel=1e-4)
    assert fallback.growth.b == pytest.approx(newton.growth.b, rel=1e-3)


def test_growth_calibration_other_targets():
    targets = CalibrationTargets(peak_month=360.0, baseline_equiv=(1000.0, 150.0))
    g = calibrate_growth(targets)
    s = Scenario(g, LinearExponent(DEFAULT_H))
    assert find_peak(s) == pytest.approx(360.0, abs=1e-2)
    assert equivalent_age(s, 1000.0, s) == pytest.approx(150.0, abs=1e-2)


def test_weakening_tau(calibration, scenarios):
    tau = calibration.weakening_tau
    assert equivalent_age(scenarios["exp-weaken"], 1000.0, scenarios["baseline"]) == pytest.approx(97.0, abs=1.0)
    half = Scenario(calibration.growth, DoubleExponential(DEFAULT_H, tau / 2))
    full = Scenario(calibration.growth, DoubleExponential(DEFAULT_H, tau))
    assert log2_complexity(1000.0, half) < log2_complexity(1000.0, full)
    wider = Scenario(calibration.growth, DoubleExponential(DEFAULT_H, tau * 1.05))
    base = scenarios["baseline"]
    assert equivalent_age(full, 1000.0, base) < equivalent_age(wider, 1000.0, base)


def test_long_tau_with_rescaled_rate_recovers_linear(calibration, baseline):
    # h*(exp(t/tau) - 1) -> h_lin*t when h = h_lin*tau and tau -> infinity
    tau = 1e6
    s = Scenario(calibration.growth, DoubleExponential(DEFAULT_H * tau, tau))
    assert equivalent_age(s, 1000.0, baseline) == pytest.approx(equivalent_age(baseline, 1000.0, baseline), abs=0.1)


def test_long_tau_with_fixed_rate_removes_weakening(calibration, baseline):
    s = Scenario(calibration.growth, DoubleExponential(DEFAULT_H, 1e6))
    with pytest.raises(AboveRangeError):
        equivalent_age(s, 1000.0, baseline)


def test_weakening_tau_unattainable(calibration):
    with pytest.raises(BracketError) as info:
        calibrate_weakening_tau(calibration.growth, 0.0, (1000.0, 97.0))
    assert info.value.attained[0] == info.value.attained[1]


def test_cognition_calibration(calibration, baseline):
    p = calibration.cognition
    g = calibration.growth
    assert cognitive_depth_raw(600.0, p, g) == pytest.approx(log2_complexity(600.0, baseline), rel=1e-12)
    assert cognitive_depth_raw(0.0, p, g) == pytest.approx(0.05 * log2_complexity(0.0, baseline), rel=1e-12)
    raw = cognitive_depth_raw_grid(MONTHS, p, g)
    c = log2_complexity_grid(MONTHS, baseline)
    assert np.all(raw[:591] < c[:591])
    assert raw[700] > c[700]


def test_intersection(calibration, baseline):
    assert find_intersection(calibration.cognition, baseline) == pytest.approx(600.0, abs=2.0)
    doubled = replace(calibration.cognition, k=2 * calibration.cognition.k)
    assert find_intersection(doubled, baseline) < 600.0
    tiny = replace(calibration.cognition, k=1e-6)
    with pytest.raises(ShapeError) as info:
        find_intersection(tiny, baseline)
    assert info.value.crossings == []


def test_intersection_multiple_crossings(calibration, baseline):
    # flat depth between C(1200) and the peak value: complexity rises through it, then falls back
    level = 0.5 * (log2_complexity(1200.0, baseline) + log2_complexity(find_peak(baseline), baseline))
    flat = CognitionParams(k=level, lam=1e-12, l=0.0)
    with pytest.raises(ShapeError) as info:
        find_intersection(flat, baseline)
    assert len(info.value.crossings) == 2
    assert info.value.crossings[0] < 300 < info.value.crossings[1]


def test_calibration_scale_invariance_equivalent_ages(calibration):
    ten = calibrate(n_max=1e7)
    assert ten.weakening_tau == pytest.approx(calibration.weakening_tau, rel=1e-6)
    assert ten.cognition.lam == pytest.approx(calibration.cognition.lam, rel=1e-6)


def test_cognition_calibration_rejects_unreachable_target(calibration):
    from cogcomplex.errors import CalibrationError
    with pytest.raises(CalibrationError):
        calibrate_cognition(calibration.growth, LinearExponent(DEFAULT_H), 600.0, newborn_fraction=1.5)


def test_calibration_speed():
    start = time.perf_counter()
    calibrate()
    assert time.perf_counter() - start < 2.0
