import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cogcomplex.combinatorics import enumerate_states, states_with_n_firing, total_states
from cogcomplex.errors import ParameterError, ScaleError


def subset_sizes(N):
    """Independent oracle: walk every subset of N neurons via itertools."""
    counts = [0] * (N + 1)
    for config in itertools.product((0, 1), repeat=N):
        counts[sum(config)] += 1
    return counts


def test_boundary_coefficients():
    for N in range(0, 65):
        assert states_with_n_firing(N, 0) == 1
        assert states_with_n_firing(N, N) == 1


def test_five_choose_two_by_enumeration():
    assert subset_sizes(5)[2] == 10
    assert states_with_n_firing(5, 2) == 10


@pytest.mark.parametrize("N", range(1, 21))
def test_pascal_identity(N):
    for n in range(1, N):
        assert states_with_n_firing(N, n) == states_with_n_firing(N - 1, n - 1) + states_with_n_firing(N - 1, n)


def test_wide_coefficients_exact():
    assert states_with_n_firing(64, 32) == 1832624140942590534
    # beyond 2**53: a float round trip would lose the exact value
    assert int(float(states_with_n_firing(64, 32))) != states_with_n_firing(64, 32)
    assert total_states(64) == 2 ** 64


def test_total_states():
    assert total_states(0) == 1
    assert total_states(1) == 2
    assert total_states(10) == 1024
    assert total_states(20) == 1048576


def test_total_twenty_matches_subset_walk():
    total = sum(1 for _ in range(1 << 20))
    assert total == total_states(20) == enumerate_states(20).total


def test_domain_errors():
    with pytest.raises(ParameterError):
        states_with_n_firing(5, 6)
    with pytest.raises(ParameterError):
        states_with_n_firing(65, 1)
    with pytest.raises(ParameterError):
        total_states(65)
    with pytest.raises(ParameterError):
        states_with_n_firing(-1, 0)
    with pytest.raises(ScaleError):
        enumerate_states(25)


def test_enumerate_small():
    assert enumerate_states(0).counts == (1,)
    assert enumerate_states(5).counts == (1, 5, 10, 10, 5, 1)
    assert enumerate_states(12).total == 4096


@pytest.mark.parametrize("N", range(0, 15))
def test_enumeration_matches_itertools_oracle(N):
    assert list(enumerate_states(N).counts) == subset_sizes(N)


@given(st.integers(0, 20))
def test_histogram_invariants(N):
    counts = enumerate_states(N).counts
    assert sum(counts) == 2 ** N
    assert all(c == states_with_n_firing(N, n) for n, c in enumerate(counts))
    assert counts == counts[::-1]
    half = N // 2
    assert all(counts[i] <= counts[i + 1] for i in range(half))
    assert all(counts[i] >= counts[i + 1] for i in range(half, N))
