import itertools
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import single, symplectic, x
from nkoszul.classification import (
    adapted_presentation,
    antisymmetriser,
    classify_antisymmetric,
    classify_quadratic,
    coeff_matrix,
    congruent,
    exact_rank,
    is_antisymmetric,
    matrix_tensor,
    rank_one_adapted,
    zerodivisor_probe,
)
from nkoszul.exactlin import GF, CharacteristicError, Tensor, scalar
from nkoszul.koszul import global_dimension
from nkoszul.presentation import Presentation, graded_dims, random_relation


def random_invertible(n, rng):
    while True:
        M = [[scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2))) for _ in range(n)]
             for _ in range(n)]
        if exact_rank(M) == n:
            return M


def random_rank_one(n, rng):
    a = [rng.randint(-2, 2) for _ in range(n)]
    b = [rng.randint(-2, 2) for _ in range(n)]
    if not any(a):
        a[0] = 1
    if not any(b):
        b[-1] = 1
    return Tensor(2, {(i, j): a[i] * b[j] for i in range(n) for j in range(n) if a[i] * b[j]})


def test_antisymmetry_predicate():
    assert is_antisymmetric(x(0, 1) - x(1, 0))
    assert not is_antisymmetric(x(0, 1) + x(1, 0))
    assert is_antisymmetric(antisymmetriser([0, 1, 2]))


def test_antisymmetriser_examples():
    assert antisymmetriser([0, 1]) == x(0, 1) - x(1, 0)
    t = antisymmetriser([0, 1, 2])
    assert len(t) == 6 and set(t.coeffs.values()) == {1, -1}
    assert antisymmetriser([0]) == x(0)
    with pytest.raises(ValueError):
        antisymmetriser([0, 0])


def test_antisymmetric_profiles():
    p = classify_antisymmetric(symplectic())
    assert p.koszul and p.global_dimension == 2 and p.as_gorenstein and p.calabi_yau
    p = classify_antisymmetric(single(3, 2, antisymmetriser([0, 1])))
    assert p.koszul and p.global_dimension == 2 and not p.as_gorenstein
    p = classify_antisymmetric(single(3, 3, antisymmetriser([0, 1, 2])))
    assert p.global_dimension == 2 and not p.as_gorenstein and not p.calabi_yau
    assert all(p.overlap_vanishing.values()) and sorted(p.overlap_vanishing) == [1, 2]


def test_antisymmetric_rejections():
    with pytest.raises(ValueError):
        classify_antisymmetric(single(2, 2, x(0, 1) + x(1, 0)))
    with pytest.raises(ValueError):
        classify_antisymmetric(single(2, 3, antisymmetriser([0, 1]) @ x(0)))
    g = Tensor(2, {(0, 1): GF(1, 5), (1, 0): GF(-1, 5)})
    with pytest.raises(CharacteristicError):
        classify_antisymmetric(single(2, 2, g))


@pytest.mark.parametrize("n,N", [(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (4, 4)])
def test_antisymmetric_overlaps_vanish(n, N):
    rng = random.Random(n * 10 + N)
    # random linear combination of antisymmetrisers of N-subsets
    f = Tensor.zero(N)
    for sub in itertools.combinations(range(n), N):
        c = rng.randint(-2, 2)
        if c:
            f = f + antisymmetriser(sub).scale(c)
    if not f:
        f = antisymmetriser(range(N))
    p = classify_antisymmetric(single(n, N, f))
    assert all(p.overlap_vanishing.values())


def test_quadratic_examples():
    p = classify_quadratic(symplectic())
    assert (p.rank, p.antisymmetric, p.global_dimension, p.as_gorenstein, p.calabi_yau) == (
        2, True, 2, True, True)
    p = classify_quadratic(single(2, 2, x(0, 0)))
    assert (p.rank, p.P2, p.global_dimension, p.as_gorenstein) == (1, True, math.inf, False)
    p = classify_quadratic(single(2, 2, x(0, 1)))
    assert (p.rank, p.P1, p.P2, p.global_dimension, p.as_gorenstein) == (1, True, False, 2, False)
    with pytest.raises(ValueError):
        classify_quadratic(single(2, 3, x(0, 1, 0)))


def check_profile_invariants(p, n):
    assert not p.P2 or p.P1
    assert p.P2 == (p.symmetric and p.rank == 1)
    assert p.nondegenerate == (p.rank == n)
    assert not p.calabi_yau or p.as_gorenstein
    assert (p.global_dimension == math.inf) == p.P2
    assert p.koszul
    # rank 1 is never AS-Gorenstein; beyond that AS-Gorenstein is invertibility of M
    if p.rank > 1:
        assert p.as_gorenstein == p.nondegenerate
    else:
        assert not p.as_gorenstein


@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_quadratic_invariants_random(seed, n):
    rng = random.Random(seed)
    P = single(n, 2, random_relation(n, 2, rng))
    p = classify_quadratic(P)
    check_profile_invariants(p, n)
    assert p.global_dimension == global_dimension(P)


@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_rank_one_invariants(seed, n):
    rng = random.Random(seed)
    P = single(n, 2, random_rank_one(n, rng))
    p = classify_quadratic(P)
    check_profile_invariants(p, n)
    assert p.rank == 1
    assert p.global_dimension == global_dimension(P)


@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_basis_invariance(seed, n):
    rng = random.Random(seed)
    f = random_relation(n, 2, rng)
    M = coeff_matrix(f, n)
    base = classify_quadratic(single(n, 2, f))
    for _ in range(20):
        Pm = random_invertible(n, rng)
        g = matrix_tensor(congruent(M, Pm))
        q = classify_quadratic(single(n, 2, g))
        assert (q.rank, q.symmetric, q.antisymmetric, q.nondegenerate) == (
            base.rank, base.symmetric, base.antisymmetric, base.nondegenerate)


def test_congruence_is_substitution():
    rng = random.Random(7)
    f = random_relation(3, 2, rng)
    Pm = random_invertible(3, rng)
    images = [Tensor(1, {(k,): Pm[k][j] for k in range(3) if Pm[k][j]}) for j in range(3)]
    # substituting x_j -> sum_k P_kj y_k is M -> P M P^T; congruent uses P^T M P
    Pt = [list(r) for r in zip(*Pm)]
    assert f.substitute(images) == matrix_tensor(congruent(coeff_matrix(f, 3), Pt))


def test_zerodivisor_probe_examples(rng):
    assert zerodivisor_probe(symplectic(), x(0), 5)
    while True:
        f = random_relation(3, 2, rng, terms=6)
        if exact_rank(coeff_matrix(f, 3)) == 2:
            break
    v = Tensor(1, {(0,): 1, (1,): -2, (2,): Fraction(1, 3)})
    assert zerodivisor_probe(single(3, 2, f), v, 4)
    with pytest.raises(ValueError):
        zerodivisor_probe(single(2, 2, x(0, 0)), x(0), 3)


def test_zerodivisor_probe_needs_single_relation():
    P = Presentation(2, 2, (x(0, 1), x(1, 0)))
    with pytest.raises(ValueError):
        zerodivisor_probe(P, x(0), 2)


@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_rank_one_adapted_basis(seed, n):
    rng = random.Random(seed)
    f = random_rank_one(n, rng)
    g, B = rank_one_adapted(f, n)
    # every term of g ends in y_0
    assert all(w[1] == 0 for w in g.coeffs)
    # substituting y_k = sum_j B[k][j] x_j into g recovers f
    images = [Tensor(1, {(j,): B[k][j] for j in range(n) if B[k][j]}) for k in range(n)]
    assert g.substitute(images) == f
    # the adapted presentation has the same graded dimensions
    assert graded_dims(adapted_presentation(single(n, 2, f)), 5) == graded_dims(single(n, 2, f), 5)
