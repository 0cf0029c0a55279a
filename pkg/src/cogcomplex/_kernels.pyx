# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Mirrors ``_kernels_py`` exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, expm1, log1p, isnan
from libc.stdint cimport uint64_t

cnp.import_array()


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

cdef double LOG2E = 1.4426950408889634

MODE_LINEAR = 0
MODE_DOUBLE = 1


def complexity_grid(months, double n_max, double b, double tau_g, int mode_kind,
                    double h, double tau, sudden_months, sudden_fractions,
                    double sus_start, double sus_rate):
    cdef const double[::1] t = np.ascontiguousarray(months, dtype=np.float64)
    cdef const double[::1] sm = np.ascontiguousarray(sudden_months, dtype=np.float64)
    cdef const double[::1] sf = np.ascontiguousarray(sudden_fractions, dtype=np.float64)
    cdef Py_ssize_t n = t.shape[0], n_ev = sm.shape[0], i, j
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] res = out
    cdef double ti, neurons, factor, base, elapsed
    cdef bint sustained = not isnan(sus_start)
    cdef double log_keep = log1p(-sus_rate) if sustained else 0.0
    for i in range(n):
        ti = t[i]
        neurons = n_max * exp(-b * exp(-ti / tau_g))
        factor = 1.0
        for j in range(n_ev):
            if ti >= sm[j]:
                factor *= 1.0 - sf[j]
        if sustained and ti > sus_start:
            elapsed = ti - sus_start
            factor *= exp(elapsed * log_keep)
        if mode_kind == 0:
            base = 1.0 - h * ti * LOG2E
        elif h == 0.0:
            base = 1.0
        else:
            base = 1.0 - h * expm1(ti / tau) * LOG2E
        res[i] = neurons * factor * base
    return out


def firing_histogram(int n_neurons):
    cdef uint64_t total = (<uint64_t>1) << n_neurons
    cdef uint64_t state
    cdef uint64_t[::1] counts = np.zeros(n_neurons + 1, dtype=np.uint64)
    for state in range(total):
        counts[__builtin_popcountll(state)] += 1
    return [int(c) for c in counts]
