"""N-homogeneous algebra presentations A(V, R) and their graded pieces."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import (
    Echelon,
    Subspace,
    Tensor,
    extend,
    intersect,
    is_rational,
    span,
    words,
)

DEFAULT_DEGREE_CAP = 12


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""

    def __init__(self, cap_name: str, cap_value: int, requested=None):
        self.cap_name = cap_name
        self.cap_value = cap_value
        self.requested = requested
        msg = "%s=%s exceeded" % (cap_name, cap_value)
        if requested is not None:
            msg += " (requested %s)" % (requested,)
        super().__init__(msg)


def nu(N: int, i: int) -> int:
    """Jump map: nu(2k) = N*k, nu(2k+1) = N*k + 1."""
    if i < 0:
        raise ValueError("nu is defined on natural numbers")
    q, r = divmod(i, 2)
    return N * q + r


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators x_0..x_{n-1} of degree 1 and relations of degree N.

    ``relations`` may be empty (free algebra).  The relation space R is
    their span; most of the package requires dim R = 1.
    """

    n: int
    N: int
    relations: tuple = ()
    degree_cap: int = DEFAULT_DEGREE_CAP
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("n must be >= 0")
        if self.N < 2:
            raise ValueError("relation degree N must be >= 2, got %d" % self.N)
        rels = tuple(self.relations)
        for f in rels:
            if not isinstance(f, Tensor):
                raise TypeError("relations must be Tensor instances")
            if f.degree != self.N:
                raise ValueError("relation of degree %d, expected N=%d" % (f.degree, self.N))
            if not f:
                raise ValueError("relations must be nonzero")
            if f.max_letter() >= self.n:
                raise ValueError("generator index %d >= n=%d" % (f.max_letter(), self.n))
        object.__setattr__(self, "relations", rels)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.n, self.N, self.relations) == (other.n, other.N, other.relations)

    def __hash__(self):
        return hash((self.n, self.N, self.relations))

    @property
    def R(self) -> Subspace:
        if "R" not in self._cache:
            self._cache["R"] = span(self.relations, self.N, self.n)
        return self._cache["R"]

    @property
    def relation_dim(self) -> int:
        return self.R.dim

    @property
    def is_single(self) -> bool:
        return self.relation_dim == 1

    @property
    def relation(self) -> Tensor:
        """The single relation f (requires dim R = 1)."""
        if not self.is_single:
            raise ValueError("presentation has dim R = %d, expected 1" % self.relation_dim)
        return self.relations[0]

    def is_rational(self) -> bool:
        return all(is_rational(c) for f in self.relations for _, c in f)

    def check_degree(self, d: int):
        if d > self.degree_cap:
            raise ResourceError("degree_cap", self.degree_cap, d)

    def __repr__(self):
        return "Presentation(n=%d, N=%d, relations=%r)" % (self.n, self.N, list(self.relations))


def w_space(P: Presentation, m: int) -> Subspace:
    """W_m: intersection of all V^i (x) R (x) V^j with i + N + j = m."""
    key = ("W", m)
    if key in P._cache:
        return P._cache[key]
    if m < P.N:
        W = Subspace.full(P.n, m)
    elif m == P.N:
        W = P.R
    else:
        P.check_degree(m)
        prev = w_space(P, m - 1)
        if prev.is_zero():
            W = Subspace.zero(P.n, m)
        else:
            # W_m = (W_{m-1} (x) V) cap (V^{m-N} (x) R)
            W = intersect(extend(prev, 0, 1), extend(P.R, m - P.N, 0))
    P._cache[key] = W
    return W


def ideal_component(P: Presentation, d: int) -> Subspace:
    """Degree-d piece of the two-sided ideal: sum of V^i (x) R (x) V^j, i + N + j = d."""
    key = ("I", d)
    if key in P._cache:
        return P._cache[key]
    if d < P.N or not P.relations:
        I = Subspace.zero(P.n, d)
    else:
        P.check_degree(d)
        if d == P.N:
            I = P.R
        else:
            # I_d = I_{d-1} (x) V + V^{d-N} (x) R; the first summand is already reduced
            ech = Echelon(extend(ideal_component(P, d - 1), 0, 1).echelon().rows)
            for u in words(P.n, d - P.N):
                for r in P.R.rows:
                    ech.add({u + w: c for w, c in r.coeffs.items()})
            I = Subspace(P.n, d, ech.rows)
    P._cache[key] = I
    return I


def graded_dim(P: Presentation, d: int) -> int:
    """dim A_d = n^d - dim I_d, by exact quotient linear algebra."""
    if d == 0:
        return 1
    if d < P.N:
        return P.n ** d
    return P.n ** d - ideal_component(P, d).dim


def graded_dims(P: Presentation, D: int) -> list:
    return [graded_dim(P, d) for d in range(D + 1)]


def standard_words(P: Presentation, d: int) -> list:
    """Words of length d that are not pivots of I_d; they form a basis of A_d."""
    I = ideal_component(P, d)
    piv = set(I.pivots)
    return [w for w in words(P.n, d) if w not in piv]


def normal_form(P: Presentation, t: Tensor) -> Tensor:
    """Canonical representative of t in A_{deg t}, supported on standard words."""
    if t.degree < P.N:
        return t
    return ideal_component(P, t.degree).reduce(t)


def shift(t: Tensor, offset: int) -> Tensor:
    return Tensor._raw(t.degree, {tuple(i + offset for i in w): c for w, c in t.coeffs.items()})


def free_product(P: Presentation, Q: Presentation) -> Presentation:
    """Generators of P followed by those of Q; Q's letters are shifted by P.n."""
    if P.N != Q.N:
        raise ValueError("free product needs equal relation degrees (%d != %d)" % (P.N, Q.N))
    rels = tuple(P.relations) + tuple(shift(f, P.n) for f in Q.relations)
    return Presentation(P.n + Q.n, P.N, rels, degree_cap=min(P.degree_cap, Q.degree_cap))


def random_relation(n: int, N: int, rng, terms: int | None = None, height: int = 5) -> Tensor:
    """Random nonzero degree-N tensor with small rational coefficients.

    ``rng`` is a random.Random; ``terms`` defaults to a random support size.
    """
    from fractions import Fraction

    total = n ** N
    if terms is None:
        terms = rng.randint(1, min(total, 2 * n))
    support = rng.sample(range(total), min(terms, total))
    coeffs = {}
    for idx in support:
        w = []
        for _ in range(N):
            idx, r = divmod(idx, n)
            w.append(r)
        num = 0
        while num == 0:
            num = rng.randint(-height, height)
        coeffs[tuple(reversed(w))] = Fraction(num, rng.randint(1, height))
    return Tensor(N, coeffs)
