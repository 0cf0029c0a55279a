"""Pure-Python/numpy kernels. Same API as the compiled ``_kernels`` module."""

from __future__ import annotations

import numpy as np

LOG2E = float(np.log2(np.e))

MODE_LINEAR = 0
MODE_DOUBLE = 1


def complexity_grid(months, n_max, b, tau_g, mode_kind, h, tau,
                    sudden_months, sudden_fractions, sus_start, sus_rate):
    """log2 complexity of a scenario at every entry of ``months``.

    ``sus_start`` is NaN when there is no sustained-loss event.
    """
    t = np.ascontiguousarray(months, dtype=np.float64)
    n = n_max * np.exp(-b * np.exp(-t / tau_g))
    factor = np.ones_like(t)
    for m, f in zip(np.asarray(sudden_months, dtype=np.float64),
                    np.asarray(sudden_fractions, dtype=np.float64)):
        factor = np.where(t >= m, factor * (1.0 - f), factor)
    if not np.isnan(sus_start):
        elapsed = np.maximum(t - sus_start, 0.0)
        factor = factor * np.exp(elapsed * np.log1p(-sus_rate))
    if mode_kind == MODE_LINEAR:
        base = 1.0 - h * t * LOG2E
    elif h == 0:
        base = np.ones_like(t)
    else:
        with np.errstate(over="ignore"):
            base = 1.0 - h * np.expm1(t / tau) * LOG2E
    return n * factor * base


def firing_histogram(n_neurons):
    """Bucket all ``2**n_neurons`` firing configurations by number of active neurons."""
    counts = [0] * (n_neurons + 1)
    for state in range(1 << n_neurons):
        counts[bin(state).count("1")] += 1
    return counts
