"""Closed-form classification of antisymmetric and quadratic single relations.

Everything here reduces to linear algebra on the n x n coefficient matrix
M(f) with M_ij = coefficient of x_i x_j; AS-Gorenstein and Calabi-Yau are
matrix predicates, no homological computation is run.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .exactlin import CharacteristicError, Echelon, Tensor, extend, intersect, scalar
from .presentation import Presentation, normal_form, standard_words


def permutation_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def antisymmetriser(indices) -> Tensor:
    """Ant(x_{i_1}, ..., x_{i_m}) = sum over sigma of sgn(sigma) x_{i_sigma(1)} ... x_{i_sigma(m)}."""
    indices = list(indices)
    if len(set(indices)) != len(indices):
        raise ValueError("antisymmetriser of repeated generators is zero: %r" % (indices,))
    coeffs = {}
    for perm in itertools.permutations(range(len(indices))):
        coeffs[tuple(indices[p] for p in perm)] = permutation_sign(perm)
    return Tensor(len(indices), coeffs)


def is_antisymmetric(f: Tensor) -> bool:
    """Every adjacent transposition of positions negates f (these generate S_N)."""
    neg = -f
    for i in range(f.degree - 1):
        perm = list(range(f.degree))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if f.permute_positions(perm) != neg:
            return False
    return True


def coeff_matrix(f: Tensor, n: int) -> list:
    """M(f) as a list of rows of exact scalars."""
    if f.degree != 2:
        raise ValueError("coefficient matrix needs a quadratic tensor (degree %d)" % f.degree)
    zero = scalar(0)
    M = [[zero] * n for _ in range(n)]
    for (i, j), c in f.coeffs.items():
        M[i][j] = c
    return M


def matrix_tensor(M) -> Tensor:
    return Tensor(2, {(i, j): c for i, row in enumerate(M) for j, c in enumerate(row) if c != 0})


def exact_rank(M) -> int:
    ech = Echelon()
    for row in M:
        ech.add({j: c for j, c in enumerate(row) if c != 0})
    return len(ech)


def transpose(M) -> list:
    return [list(col) for col in zip(*M)]


def is_symmetric_matrix(M) -> bool:
    return M == transpose(M)


def is_antisymmetric_matrix(M) -> bool:
    return all(M[i][j] == -M[j][i] for i in range(len(M)) for j in range(len(M)))


def congruent(M, Pm) -> list:
    """P^T M P: the matrix of f after the change of generators x = P y."""
    n = len(M)
    MP = [[sum((M[i][k] * Pm[k][j] for k in range(n)), scalar(0)) for j in range(n)]
          for i in range(n)]
    return [[sum((Pm[k][i] * MP[k][j] for k in range(n)), scalar(0)) for j in range(n)]
            for i in range(n)]


def _require_char0(P: Presentation):
    if not P.is_rational():
        raise CharacteristicError("this classification holds in characteristic zero only")


@dataclass
class AntisymProfile:
    n: int
    N: int
    is_antisymmetric: bool
    koszul: bool
    global_dimension: int
    nondegenerate: bool
    as_gorenstein: bool
    calabi_yau: bool
    # m -> whether (R (x) V^m) cap (V^m (x) R) = 0 was confirmed
    overlap_vanishing: dict = field(default_factory=dict)


def classify_antisymmetric(P: Presentation) -> AntisymProfile:
    """Koszul, global dimension 2; AS-Gorenstein = Calabi-Yau iff N = 2 and f nondegenerate."""
    if not P.is_single:
        raise ValueError("needs a single relation")
    _require_char0(P)
    f = P.relation
    if not is_antisymmetric(f):
        raise ValueError("relation is not antisymmetric")
    if not 2 <= P.N <= P.n:
        raise ValueError("antisymmetric classification needs 2 <= N <= n")
    checks = {}
    for m in range(1, P.N):
        checks[m] = intersect(extend(P.R, 0, m), extend(P.R, m, 0)).is_zero()
    nondeg = False
    if P.N == 2:
        nondeg = exact_rank(coeff_matrix(f, P.n)) == P.n
    as_g = P.N == 2 and nondeg
    return AntisymProfile(P.n, P.N, True, True, 2, nondeg, as_g, as_g, checks)


@dataclass
class QuadraticProfile:
    rank: int
    symmetric: bool
    antisymmetric: bool
    nondegenerate: bool
    P1: bool
    P2: bool
    koszul: bool
    global_dimension: float
    as_gorenstein: bool
    calabi_yau: bool
    gk_dimension: float


def classify_quadratic(P: Presentation) -> QuadraticProfile:
    if P.N != 2:
        raise ValueError("quadratic classification needs N = 2 (got N=%d)" % P.N)
    if not P.is_single:
        raise ValueError("needs a single relation")
    _require_char0(P)
    M = coeff_matrix(P.relation, P.n)
    r = exact_rank(M)
    sym = is_symmetric_matrix(M)
    anti = is_antisymmetric_matrix(M)
    nondeg = r == P.n
    p1 = r == 1
    p2 = sym and r == 1
    gldim = math.inf if p2 else 2
    # rank 1 is never AS-Gorenstein; for n = 1 that is the nondegenerate x^2 case
    as_g = nondeg and not p2
    cy = as_g and anti
    if P.n == 1:
        gk = 0
    elif P.n == 2:
        gk = gldim
    else:
        gk = math.inf
    return QuadraticProfile(r, sym, anti, nondeg, p1, p2, True, gldim, as_g, cy, gk)


def zerodivisor_probe(P: Presentation, v: Tensor, d_max: int) -> bool:
    """Check that a -> a v and a -> v a are injective on A_d for all d <= d_max."""
    if P.N != 2 or not P.is_single:
        raise ValueError("probe needs a single quadratic relation")
    if exact_rank(coeff_matrix(P.relation, P.n)) <= 1:
        raise ValueError("probe needs rank(f) > 1")
    if v.degree != 1 or not v:
        raise ValueError("v must be a nonzero element of V")
    P.check_degree(d_max + 1)
    for d in range(d_max + 1):
        basis = standard_words(P, d)
        for side in ("right", "left"):
            ech = Echelon()
            for s in basis:
                a = Tensor._raw(d, {s: scalar(1)})
                prod = a @ v if side == "right" else v @ a
                ech.add(normal_form(P, prod).coeffs)
            if len(ech) != len(basis):
                return False
    return True


def rank_one_factors(f: Tensor, n: int):
    """For rank(f) = 1, vectors (a, b) with f = (a . x)(b . x)."""
    M = coeff_matrix(f, n)
    if exact_rank(M) != 1:
        raise ValueError("f does not have rank 1")
    i0 = next(i for i in range(n) if any(M[i]))
    b = list(M[i0])
    j0 = next(j for j in range(n) if b[j] != 0)
    a = [M[i][j0] / b[j0] for i in range(n)]
    return a, b


def rank_one_adapted(f: Tensor, n: int):
    """Rewrite a rank-1 quadratic f in a basis y with y_0 = b . x, so f = (sum c_i y_i) y_0.

    Returns (f in y-coordinates, matrix B with x-coordinates of y_k in row k).
    Ordering y_0 < y_1 < ... makes the single rule confluent.
    """
    a, b = rank_one_factors(f, n)
    j0 = next(j for j in range(n) if b[j] != 0)
    one, zero = scalar(1), scalar(0)
    B = [list(b)]
    for j in range(n):
        if j != j0:
            B.append([one if k == j else zero for k in range(n)])
    # coordinates c of a in the basis B: solve sum_k c_k B[k] = a
    c = [zero] * n
    c[0] = a[j0] / b[j0]
    rest = [a[k] - c[0] * b[k] for k in range(n)]
    for k, j in enumerate(j for j in range(n) if j != j0):
        c[k + 1] = rest[j]
    g = Tensor(2, {(i, 0): c[i] for i in range(n) if c[i] != 0})
    return g, B


def adapted_presentation(P: Presentation) -> Presentation:
    g, _ = rank_one_adapted(P.relation, P.n)
    return Presentation(P.n, 2, (g,), degree_cap=P.degree_cap)


__all__ = [
    "AntisymProfile",
    "QuadraticProfile",
    "adapted_presentation",
    "antisymmetriser",
    "classify_antisymmetric",
    "classify_quadratic",
    "coeff_matrix",
    "congruent",
    "exact_rank",
    "is_antisymmetric",
    "rank_one_adapted",
    "zerodivisor_probe",
]
