import math
from dataclasses import replace

import numpy as np
import pytest

from cogcomplex.cognition import (
    CognitionParams,
    check_bracket,
    cognitive_depth,
    cognitive_depth_grid,
    cognitive_depth_raw,
    cognitive_depth_raw_grid,
    default_coupling,
    knowledge,
    max_growth_product,
    register_knowledge_model,
)
from cogcomplex.complexity import GrowthParams, neuron_count, neuron_count_derivative
from cogcomplex.errors import ConfigurationError, ParameterError
from cogcomplex.scenarios import log2_complexity, log2_complexity_grid

MONTHS = np.arange(0.0, 1201.0)


def test_knowledge_values():
    p = CognitionParams(k=1.0, lam=0.002)
    assert knowledge(0.0, p) == 1.0
    assert knowledge(math.log(2) / 0.002, p) == pytest.approx(2.0, rel=1e-14)
    assert knowledge(600.0, p) == pytest.approx(3.32011692273654749, rel=1e-14)


def test_invalid_params():
    with pytest.raises(ParameterError):
        CognitionParams(k=0.0, lam=0.1)
    with pytest.raises(ParameterError):
        CognitionParams(k=1.0, lam=0.1, l=-1.0)
    with pytest.raises(ParameterError):
        CognitionParams(k=1.0, lam=0.1, knowledge_model="nope")


def test_decoupled_depth_is_pure_exponential():
    g = GrowthParams(1e6, 0.08, 61.0)
    p = CognitionParams(k=3.0, lam=0.004, E=2.0, l=0.0)
    raw = cognitive_depth_raw_grid(MONTHS, p, g)
    assert np.allclose(raw, 3.0 * 2.0 * np.exp(0.004 * MONTHS), rtol=1e-14)
    assert np.all(np.diff(raw) > 0)


def test_plateau_limit(calibration):
    p, g = calibration.cognition, calibration.growth
    t = 4000.0
    assert cognitive_depth_raw(t, p, g) == pytest.approx(p.k * p.E * knowledge(t, p), rel=1e-12)


def test_max_growth_product_matches_dense_scan():
    for g in (GrowthParams(1e6, 0.08, 61.0), GrowthParams(1000.0, 5.0, 60.0), GrowthParams(10.0, 200.0, 30.0)):
        t = np.linspace(0.0, 1200.0, 600001)
        inner = g.b * np.exp(-t / g.tau_g)
        n = g.n_max * np.exp(-inner)
        scan = np.max(n * n * inner / g.tau_g)
        assert max_growth_product(g) == pytest.approx(scan, rel=1e-8)


def test_default_coupling_keeps_half_margin():
    g = GrowthParams(1000.0, 5.0, 60.0)
    l = default_coupling(g)
    bracket = [1.0 - l * neuron_count(t, g) * neuron_count_derivative(t, g) for t in MONTHS]
    # grid minimum sits just above the continuous one
    assert 0.5 <= min(bracket) < 0.5 + 1e-4


def test_bracket_violation_names_earliest_month():
    g = GrowthParams(1000.0, 5.0, 60.0)
    p = CognitionParams(k=1.0, lam=0.001, l=3.0 * default_coupling(g))
    product = [neuron_count(t, g) * neuron_count_derivative(t, g) for t in MONTHS]
    earliest = next(t for t, x in zip(MONTHS, product) if p.E - p.l * x <= 0)
    with pytest.raises(ConfigurationError) as info:
        check_bracket(p, g)
    assert info.value.month == earliest
    with pytest.raises(ConfigurationError) as info:
        cognitive_depth_raw_grid(MONTHS, p, g)
    assert info.value.month == earliest
    with pytest.raises(ConfigurationError):
        cognitive_depth_raw(138.0, p, g)


def test_clip(calibration, baseline):
    p = calibration.cognition
    for t in (100.0, 300.0, 500.0):
        raw = cognitive_depth_raw(t, p, baseline.growth)
        assert raw < log2_complexity(t, baseline)
        assert cognitive_depth(t, p, baseline) == raw
    for t in (700.0, 900.0, 1100.0):
        assert cognitive_depth_raw(t, p, baseline.growth) > log2_complexity(t, baseline)
        assert cognitive_depth(t, p, baseline) == log2_complexity(t, baseline)


def test_depth_never_exceeds_complexity(calibration, scenarios):
    for s in scenarios.values():
        depth = cognitive_depth_grid(MONTHS, calibration.cognition, s)
        assert np.all(depth <= log2_complexity_grid(MONTHS, s))


def test_depth_regimes_on_monthly_grid(calibration, baseline):
    p = calibration.cognition
    raw = cognitive_depth_raw_grid(MONTHS, p, baseline.growth)
    c = log2_complexity_grid(MONTHS, baseline)
    depth = cognitive_depth_grid(MONTHS, p, baseline)
    before, after = MONTHS < 600, MONTHS > 600
    assert np.array_equal(depth[before], raw[before])
    assert np.array_equal(depth[after], c[after])


def test_depth_continuous_at_intersection(calibration, baseline):
    p = calibration.cognition
    left, right = cognitive_depth(599.0, p, baseline), cognitive_depth(601.0, p, baseline)
    slope = max(abs(cognitive_depth_raw(601.0, p, baseline.growth) - cognitive_depth_raw(599.0, p, baseline.growth)),
                abs(log2_complexity(601.0, baseline) - log2_complexity(599.0, baseline)))
    assert abs(right - left) <= slope


def test_pluggable_knowledge_model():
    register_knowledge_model("linear", lambda t, p: p.K0 * (1.0 + p.lam * np.asarray(t, dtype=float)))
    p = CognitionParams(k=2.0, lam=0.01, knowledge_model="linear")
    g = GrowthParams(1e6, 0.08, 61.0)
    assert knowledge(100.0, p) == pytest.approx(2.0)
    assert cognitive_depth_raw(100.0, p, g) == pytest.approx(4.0)
    assert cognitive_depth_raw(100.0, replace(p, knowledge_model="exponential"), g) == pytest.approx(
        2.0 * math.exp(1.0))
