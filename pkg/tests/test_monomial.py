import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import brute_monomial_dims, single
from nkoszul.exactlin import Tensor, span, words
from nkoszul.hilbert import series_inverse
from nkoszul.monomial import (
    MonomialSet,
    avoid_count,
    borders,
    is_koszul_set,
    is_koszul_single,
    koszul_census,
    monomial_profile,
    monomial_w_space,
)
from nkoszul.presentation import ResourceError, w_space


def naive_overlap_test(C, N, n):
    """Scan every word of degree N+m, 2 <= m <= N-1, straight from the definition."""
    for m in range(2, N):
        for a in itertools.product(range(n), repeat=N + m):
            if a[:N] in C and a[m:] in C and a[m - 1:m - 1 + N] not in C:
                return False
    return True


def test_set_examples():
    assert is_koszul_set(MonomialSet(2, 2, frozenset([(0, 1), (1, 1)])))
    v = is_koszul_set(MonomialSet(2, 3, frozenset([(0, 1, 0)])))
    assert not v and v.counterexample == (0, 1, 0, 1, 0)
    assert is_koszul_set(MonomialSet(2, 3, frozenset([(0, 1, 0), (1, 0, 1)])))


def test_set_validation():
    with pytest.raises(ValueError):
        MonomialSet(2, 3, frozenset([(0, 1)]))
    with pytest.raises(ValueError):
        MonomialSet(2, 2, frozenset([(0, 2)]))


def test_single_examples():
    assert not is_koszul_single((0, 1, 0))
    assert is_koszul_single((0, 0, 0))
    assert not is_koszul_single((0, 1, 0, 1))


def test_borders():
    assert borders((0, 1, 0, 1, 0)) == [3, 1]
    assert borders((0, 0, 0)) == [2, 1]
    assert borders((0, 1)) == []


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_single_matches_set_exhaustively(N):
    for w in words(2, N):
        assert is_koszul_single(w) == bool(is_koszul_set(MonomialSet(2, N, frozenset([w]))))


@pytest.mark.parametrize("n,N", [(2, 3), (2, 4), (3, 3)])
def test_set_matches_naive_definition(n, N):
    ws = list(words(n, N))
    for k in (1, 2):
        for C in itertools.combinations(ws, k):
            if n == 3 and k == 2 and C[0][0] != 0:
                continue
            assert bool(is_koszul_set(MonomialSet(n, N, frozenset(C)))) == naive_overlap_test(
                set(C), N, n)


def test_w_space_examples():
    assert monomial_w_space((0, 0), 5, 2) == span([Tensor.monomial((0,) * 5)], 5, 2)
    assert monomial_w_space((0, 1), 3, 2).is_zero()
    assert monomial_w_space((0, 1, 0), 4, 2).is_zero()
    with pytest.raises(ValueError):
        monomial_w_space((0, 1), 2, 2)


@pytest.mark.parametrize("N", [2, 3])
def test_w_space_closed_form_matches_intersections(N):
    for f in words(2, N):
        for m in range(N + 1, N + 4):
            assert monomial_w_space(f, m, 2) == w_space(single(2, N, Tensor.monomial(f)), m)


def test_profile_examples():
    p = monomial_profile((0, 0), 2)
    assert p.global_dimension == math.inf
    assert p.hilbert_series.expand(5) == [1, 2, 3, 5, 8, 13]
    p = monomial_profile((0, 1), 2)
    assert p.global_dimension == 2 and p.gk_dimension == 2
    p = monomial_profile((0, 1, 2), 3)
    assert p.global_dimension == 2 and p.gk_dimension == math.inf
    assert not monomial_profile((0, 0, 0), 1).as_gorenstein
    assert monomial_profile((0, 0, 0), 1).gk_dimension == 0
    with pytest.raises(ValueError):
        monomial_profile((0, 1, 0), 2)


def test_profile_denominators():
    assert monomial_profile((0, 1, 1), 2).hilbert_denominator.expand(4)[:4] == [1, -2, 0, 1]
    # power case: 1 - n t + t^N - t^(N+1) + t^(2N) - ...
    assert monomial_profile((0, 0), 3).hilbert_denominator.expand(7) == [1, -3, 1, -1, 1, -1, 1, -1]


def test_avoid_count_examples():
    assert avoid_count((0, 0), 2, 2) == 3
    assert avoid_count((0, 1), 2, 2) == 3
    assert avoid_count((1, 0, 1), 2, 0) == 1
    with pytest.raises(ResourceError):
        avoid_count((0, 1), 2, 10, cap=5)


@pytest.mark.parametrize("n,N", [(2, 2), (2, 3), (3, 2), (2, 4)])
def test_avoid_count_against_enumeration(n, N):
    for f in words(n, N):
        assert [avoid_count(f, n, d) for d in range(8)] == brute_monomial_dims([f], n, 7)


def test_avoid_count_follows_profile_series():
    for N in (2, 3, 4):
        for f in words(2, N):
            if not is_koszul_single(f):
                continue
            series = monomial_profile(f, 2).hilbert_series.expand(10)
            assert [avoid_count(f, 2, d) for d in range(11)] == series


def test_census_examples():
    assert koszul_census(2, 2, 2) == 6
    assert koszul_census(2, 3, 1) == 6
    assert koszul_census(2, 2, 4) == 1


@pytest.mark.parametrize("n,N", [(2, 3), (2, 2), (3, 2)])
def test_census_matches_brute_force(n, N):
    ws = list(words(n, N))
    for p in range(len(ws) + 1):
        if math.comb(len(ws), p) > 3000:
            continue
        brute = sum(bool(is_koszul_set(MonomialSet(n, N, frozenset(C))))
                    for C in itertools.combinations(ws, p))
        assert koszul_census(n, N, p) == brute


def test_census_full_set_and_caps():
    for n, N in [(1, 2), (2, 2), (2, 3), (3, 2), (2, 4)]:
        assert koszul_census(n, N, n ** N) == 1
    with pytest.raises(ResourceError):
        koszul_census(3, 4, 2)
    with pytest.raises(ResourceError):
        koszul_census(2, 4, 8, node_cap=10)


@given(st.lists(st.integers(0, 2), min_size=2, max_size=7))
def test_single_word_random(word):
    w = tuple(word)
    n = max(w) + 1
    assert is_koszul_single(w) == bool(is_koszul_set(MonomialSet(n, len(w), frozenset([w]))))


def test_series_inverse_of_alternating_terms():
    # 1/(1 - 2t + t^3) and avoid counts for x0x1x1 agree
    den = [1, -2, 0, 1]
    assert series_inverse(den, 9) == [avoid_count((0, 1, 1), 2, d) for d in range(10)]
