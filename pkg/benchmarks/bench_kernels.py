"""Time the compiled and pure-Python kernels side by side.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from cogcomplex import _kernels_py
from cogcomplex._backend import MODE_DOUBLE
from cogcomplex.calibration import calibrate

try:
    from cogcomplex import _kernels as compiled
except ImportError:
    compiled = None


def cases():
    cal = calibrate()
    g = cal.growth
    months = np.linspace(0.0, 1200.0, 200_001)
    sudden_m, sudden_f = np.array([600.0]), np.array([0.05])

    def grid(k):
        return lambda: k.complexity_grid(months, g.n_max, g.b, g.tau_g, MODE_DOUBLE, cal.h, cal.weakening_tau,
                                         sudden_m, sudden_f, 300.0, 0.0005)

    return [("complexity_grid (200k samples)", grid), ("firing_histogram (N=18)",
                                                       lambda k: lambda: k.firing_histogram(18))]


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", compiled)] if compiled else [])
    print(f"{'kernel':32} {'backend':8} {'best (ms)':>10}")
    for name, make in cases():
        best = {}
        for label, mod in backends:
            fn = make(mod)
            best[label] = min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
            print(f"{name:32} {label:8} {best[label]:10.2f}")
        if "cython" in best:
            print(f"{'':32} {'speedup':8} {best['python'] / best['cython']:9.1f}x")
    if compiled is None:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
