"""Koszulity of single-relation algebras and a Koszul-complex homology oracle.

``criterion_check`` decides N-Koszulity for dim R = 1 by testing

    (R (x) V^m) cap (V^m (x) R)  subset of  V^{m-1} (x) R (x) V,   2 <= m <= N-1,

which is licensed because every such algebra is distributive.  The oracle
computes the homology of K(A) = A (x) W_{nu(i)} directly, slice by slice,
using quotient coordinates from the presentation, so it never relies on the
criterion it is meant to cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .exactlin import Echelon, Subspace, Tensor, contains, extend, intersect
from .presentation import Presentation, graded_dim, ideal_component, nu, standard_words, w_space

DEFAULT_PROBE_LIMIT = 6


class NotKoszulError(ValueError):
    pass


@dataclass
class KoszulVerdict:
    is_koszul: bool
    failing_m: int | None = None
    witness: Tensor | None = None
    criterion: str = "overlap-inclusion"

    def __bool__(self):
        return self.is_koszul


def _require_single(P: Presentation):
    if not P.is_single:
        raise ValueError("criterion needs a one-dimensional relation space (dim R = %d)"
                         % P.relation_dim)


def overlap_space(P: Presentation, m: int) -> Subspace:
    """(R (x) V^m) cap (V^m (x) R) inside V^{N+m}."""
    return intersect(extend(P.R, 0, m), extend(P.R, m, 0))


def criterion_check(P: Presentation) -> KoszulVerdict:
    """Decide N-Koszulity via the overlap inclusion; returns the least failing m and a witness."""
    _require_single(P)
    for m in range(2, P.N):
        X = overlap_space(P, m)
        Y = extend(P.R, m - 1, 1)
        if not contains(Y, X):
            witness = next(t for t in X.rows if t not in Y)
            return KoszulVerdict(False, m, witness)
    return KoszulVerdict(True)


def criterion_check_equalform(P: Presentation) -> KoszulVerdict:
    """Same decision via the equality (R (x) V^m) cap (V^m (x) R) = W_{N+m}."""
    _require_single(P)
    for m in range(2, P.N):
        X = overlap_space(P, m)
        W = w_space(P, P.N + m)
        if X != W:
            # W_{N+m} is always inside X, so some basis vector of X escapes it
            witness = next(t for t in X.rows if t not in W)
            return KoszulVerdict(False, m, witness, criterion="overlap-equality")
    return KoszulVerdict(True, criterion="overlap-equality")


@dataclass
class HomologyReport:
    """dim H_i(K(A))_d for 0 <= i <= max_i and internal degrees d <= max_degree."""

    max_i: int
    max_degree: int
    entries: dict = field(default_factory=dict)
    chain_dims: dict = field(default_factory=dict)

    def nonzero(self, min_i: int = 1) -> dict:
        return {k: v for k, v in sorted(self.entries.items()) if k[0] >= min_i and v}

    def vanishes(self, min_i: int = 1) -> bool:
        return not self.nonzero(min_i)

    def baseline_ok(self) -> bool:
        """H_0 is k concentrated in degree 0 and H_1 vanishes."""
        for (i, d), v in self.entries.items():
            if i == 0 and v != (1 if d == 0 else 0):
                return False
            if i == 1 and v:
                return False
        return True


class _KoszulComplex:
    """Degree slices of K(A): K_i(d) = A_{d - nu(i)} (x) W_{nu(i)}."""

    def __init__(self, P: Presentation):
        self.P = P
        self._nf: dict = {}

    def w(self, i: int) -> Subspace:
        return w_space(self.P, nu(self.P.N, i))

    def slice_dim(self, i: int, d: int) -> int:
        e = d - nu(self.P.N, i)
        if e < 0:
            return 0
        W = self.w(i)
        return graded_dim(self.P, e) * W.dim if W.dim else 0

    def word_nf(self, word: tuple) -> dict:
        """Normal form of a word in A_{len(word)} as {standard word: coeff}."""
        nf = self._nf.get(word)
        if nf is None:
            if len(word) < self.P.N:
                nf = {word: 1}
            else:
                I = ideal_component(self.P, len(word))
                nf = I.reduce(Tensor._raw(len(word), {word: 1})).coeffs
            self._nf[word] = nf
        return nf

    def differential_rank(self, i: int, d: int) -> int:
        """Rank of delta_i : K_i(d) -> K_{i-1}(d)."""
        if i <= 0 or self.slice_dim(i, d) == 0:
            return 0
        P = self.P
        hi, lo = nu(P.N, i), nu(P.N, i - 1)
        jump = hi - lo
        e = d - hi
        basis = standard_words(P, e)
        ech = Echelon()
        for b in self.w(i).rows:
            # W_hi sits inside V^jump (x) W_lo: peel off the left jump letters
            parts = b.split_left(jump)
            for s in basis:
                image: dict = {}
                for u, rest in parts.items():
                    for s2, a in self.word_nf(s + u).items():
                        for w, c in rest.coeffs.items():
                            key = s2 + w
                            v = image.get(key, 0) + a * c
                            if v == 0:
                                image.pop(key, None)
                            else:
                                image[key] = v
                ech.add(image)
        return len(ech)


def homology_oracle(P: Presentation, max_i: int, max_degree: int) -> HomologyReport:
    """Exact homology dimensions of the Koszul complex in a bounded window."""
    P.check_degree(max_degree)
    K = _KoszulComplex(P)
    rep = HomologyReport(max_i, max_degree)
    for d in range(max_degree + 1):
        ranks = {i: K.differential_rank(i, d) for i in range(0, max_i + 2)}
        for i in range(0, max_i + 1):
            dim = K.slice_dim(i, d)
            rep.chain_dims[(i, d)] = dim
            rep.entries[(i, d)] = dim - ranks[i] - ranks[i + 1]
    return rep


class AtLeast(NamedTuple):
    """Lower bound for a global dimension that the probe could not pin down."""

    value: int


def global_dimension(P: Presentation, probe_limit: int = DEFAULT_PROBE_LIMIT):
    """2, math.inf, an exact finite value, or AtLeast(k).

    For a Koszul algebra, K(A) is the minimal resolution of k, so the global
    dimension is the last i with W_{nu(i)} != 0.
    """
    _require_single(P)
    if not criterion_check(P):
        raise NotKoszulError("global dimension via W-spaces needs a Koszul algebra")
    N = P.N
    if w_space(P, N + 1).is_zero():
        return 2
    f = P.relation
    if len(f) == 1:
        (word,) = f.coeffs
        if len(set(word)) == 1:
            return math.inf
    if N == 2:
        from .classification import coeff_matrix, exact_rank, is_symmetric_matrix

        M = coeff_matrix(f, P.n)
        if is_symmetric_matrix(M) and exact_rank(M) == 1:
            return math.inf
    last = 3
    for i in range(4, probe_limit + 1):
        if P.degree_cap < nu(N, i):
            break
        if w_space(P, nu(N, i)).is_zero():
            return last
        last = i
    return AtLeast(last)
