"""Exact firing-state counting for a fully interconnected network.

Counts are Python integers throughout, so ``C(64, 32)`` and ``2**64`` are exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._backend import kernels
from .errors import ParameterError, ScaleError

MAX_EXACT_NEURONS = 64
MAX_ENUMERATED_NEURONS = 24


def _check_count(name: str, value: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise ParameterError(f"{name} must be a non-negative integer, got {value!r}")


def states_with_n_firing(N: int, n: int) -> int:
    """Number of network states with exactly ``n`` of ``N`` neurons firing."""
    _check_count("N", N)
    _check_count("n", n)
    if N > MAX_EXACT_NEURONS:
        raise ParameterError(f"N must be <= {MAX_EXACT_NEURONS}, got {N}")
    if n > N:
        raise ParameterError(f"n ({n}) exceeds N ({N})")
    n = min(n, N - n)
    result = 1
    for i in range(1, n + 1):
        # exact at every step: result * (N - n + i) is divisible by i
        result = result * (N - n + i) // i
    return result


def total_states(N: int) -> int:
    """Sum of :func:`states_with_n_firing` over every firing count, quiet state included."""
    return sum(states_with_n_firing(N, n) for n in range(N + 1))


@dataclass(frozen=True)
class StateHistogram:
    n_neurons: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)


def enumerate_states(N: int) -> StateHistogram:
    """Visit all ``2**N`` firing configurations and bucket them by firing count."""
    _check_count("N", N)
    if N > MAX_ENUMERATED_NEURONS:
        raise ScaleError(f"enumeration is limited to N <= {MAX_ENUMERATED_NEURONS}; "
                         f"use total_states({N}) for the exact count")
    return StateHistogram(N, tuple(int(c) for c in kernels.firing_histogram(N)))
