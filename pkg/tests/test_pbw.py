import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import single, symplectic, x
from nkoszul.exactlin import Tensor, words
from nkoszul.koszul import NotKoszulError
from nkoszul.pbw import (
    PhiMap,
    classify_symplectic_deformation,
    constants_only_cy,
    pbw_check,
    pbw_power_closed_form,
    power_presentation,
    symplectic_relation,
)
from nkoszul.presentation import Presentation, graded_dim
from nkoszul.rewriting import confluence_check, filtered_irreducible_count, make_rule


def random_component(n, j, rng, power_only=False):
    if j == 0:
        return Tensor(0, {(): Fraction(rng.randint(-3, 3), rng.randint(1, 3))})
    ws = [(0,) * j] if power_only else list(words(n, j))
    coeffs = {}
    for w in rng.sample(ws, rng.randint(0, min(3, len(ws)))):
        coeffs[w] = rng.randint(-2, 2)
    return Tensor(j, coeffs)


def random_phi(n, N, rng, power_only=False):
    return PhiMap(N, tuple(random_component(n, j, rng, power_only) for j in range(N)))


def test_phi_map_validation():
    with pytest.raises(ValueError):
        PhiMap(3, (Tensor.zero(0), Tensor.zero(1)))
    with pytest.raises(ValueError):
        PhiMap.from_components(2, {1: x(0, 1)})
    with pytest.raises(ValueError):
        PhiMap.from_components(2, {2: x(0, 1)})
    phi = PhiMap.from_components(3, {0: 5})
    assert phi.constant == 5 and not phi[1]


def test_pbw_examples():
    P = symplectic()
    assert pbw_check(P, PhiMap.from_components(2, {1: x(0) + x(1), 0: 7}))
    Q = power_presentation(2, 3)
    v = pbw_check(Q, PhiMap.from_components(3, {1: x(1)}))
    assert not v and v.failed_condition.startswith("J2")
    assert pbw_check(Q, PhiMap.from_components(3, {2: x(0, 0), 0: 1}))


def test_closed_form_examples():
    rng = random.Random(1)
    lam = [rng.randint(-3, 3) for _ in range(4)]
    phi = PhiMap.from_components(4, {j: Tensor.monomial((0,) * j, lam[j]) if j else lam[0]
                                     for j in range(4)})
    assert pbw_power_closed_form(2, 4, phi)
    assert not pbw_power_closed_form(2, 3, PhiMap.from_components(3, {1: x(1)}))
    assert pbw_power_closed_form(2, 3, PhiMap.zero(3))


def test_preconditions():
    with pytest.raises(NotKoszulError):
        pbw_check(single(2, 3, x(0, 1, 0)), PhiMap.zero(3))
    with pytest.raises(ValueError):
        pbw_check(Presentation(2, 2, (x(0, 1), x(1, 0))), PhiMap.zero(2))
    with pytest.raises(ValueError):
        pbw_check(symplectic(), PhiMap.zero(3))


def recheck_witness(P, phi, verdict):
    """Evaluate the failed condition again, straight from the definitions."""
    w, info = verdict.witness
    f, N = P.relation, P.N
    c = {k: t for (k,), t in w.split_right(1).items()}
    d = {k: t for (k,), t in w.split_left(1).items()}
    # c_k f = t_k, d_k f = s_k
    lead = next(iter(f.coeffs))
    ck = {k: t[lead] / f[lead] for k, t in c.items()}
    dk = {k: t[lead] / f[lead] for k, t in d.items()}
    for j in range(N):
        D = Tensor.zero(j + 1)
        for k, a in ck.items():
            D = D + (phi[j] @ x(k)).scale(a)
        for k, a in dk.items():
            D = D - (x(k) @ phi[j]).scale(a)
        assert D == info["D"][j]
    return True


@pytest.mark.parametrize("n,N", [(1, 2), (1, 3), (1, 4), (2, 2), (2, 3), (2, 4), (3, 2),
                                 (3, 3), (3, 4)])
def test_closed_form_agrees(n, N):
    rng = random.Random(100 * n + N)
    P = power_presentation(n, N)
    for k in range(20):
        phi = random_phi(n, N, rng, power_only=(k % 3 == 0))
        v = pbw_check(P, phi)
        assert v.is_pbw == pbw_power_closed_form(n, N, phi)
        if not v:
            assert recheck_witness(P, phi, v)


@given(st.integers(0, 10 ** 6))
def test_global_dimension_two_always_pbw(seed):
    rng = random.Random(seed)
    n = rng.choice([2, 4])
    P = single(n, 2, symplectic_relation(n))
    assert pbw_check(P, random_phi(n, 2, rng))


def test_symplectic_deformation_grid():
    for n in (2, 4):
        for v in (Tensor.zero(1), x(0)):
            for lam in (0, 1):
                r = classify_symplectic_deformation(n, v, lam)
                assert r.calabi_yau == (not v)
                assert r.koszul_filtered and r.pbw
                assert "HH" in r.hochschild_note
    with pytest.raises(ValueError):
        classify_symplectic_deformation(3)


def test_symplectic_examples():
    assert classify_symplectic_deformation(2, None, 1).calabi_yau
    assert not classify_symplectic_deformation(2, x(0), 0).calabi_yau
    assert classify_symplectic_deformation(4, None, 0).calabi_yau


@given(st.integers(1, 9), st.integers(-5, 5))
def test_symplectic_rescaling(scale, sign):
    s = scale if sign >= 0 else -scale
    for v in (Tensor.zero(1), x(1) - x(0)):
        assert classify_symplectic_deformation(2, v, 1, scale=s).calabi_yau == (not v)


def test_constants_only():
    assert constants_only_cy(symplectic(), 2, PhiMap.from_components(2, {0: 1}))
    assert constants_only_cy(single(4, 2, symplectic_relation(4)), 2,
                             PhiMap.from_components(2, {0: 5}))
    with pytest.raises(ValueError):
        constants_only_cy(symplectic(), 2, PhiMap.from_components(2, {1: x(0)}))
    with pytest.raises(ValueError):
        constants_only_cy(single(2, 2, x(0, 1)), 2, PhiMap.from_components(2, {0: 1}))


@given(st.integers(0, 10 ** 6))
def test_filtered_dimension_oracle(seed):
    # U = T(V)/(f - v - lam) with f symplectic: the rule for its top part has no
    # overlaps, so irreducible words of length <= d count F_d U; PBW says this
    # equals dim A_0 + ... + dim A_d
    rng = random.Random(seed)
    n = 2
    f = symplectic_relation(n)
    v = random_component(n, 1, rng)
    lam = random_component(n, 0, rng)
    phi = PhiMap(2, (lam, v))
    r = make_rule(f, lower=phi.lower_terms())
    assert confluence_check(r)
    P = single(n, 2, f)
    assert pbw_check(P, phi)
    for d in range(6):
        assert filtered_irreducible_count(r, n, d) == sum(graded_dim(P, i) for i in range(d + 1))
