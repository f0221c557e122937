"""PBW deformations of single-relation N-Koszul algebras.

A deformation replaces the relation f by f - phi_{N-1}(f) - ... - phi_0(f)
with phi_j(f) of degree j.  Writing each w in W_{N+1} as
sum_k c_k f x_k = sum_k d_k x_k f, the deformation is PBW exactly when,
for D_j(w) = sum_k c_k phi_j(f) x_k - sum_k d_k x_k phi_j(f):

    J1   D_{N-1}(w) = alpha f lies in R
    J2   alpha phi_j(f) + D_{j-1}(w) = 0        for 1 <= j <= N-1
    J3   alpha phi_0(f) = 0
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .classification import antisymmetriser, classify_quadratic
from .exactlin import Tensor, scalar
from .koszul import NotKoszulError, criterion_check
from .presentation import Presentation, w_space


@dataclass(frozen=True)
class PhiMap:
    """Images phi_j(f), j = 0..N-1; parts[0] is a degree-0 tensor (a scalar)."""

    N: int
    parts: tuple

    def __post_init__(self):
        if len(self.parts) != self.N:
            raise ValueError("need N = %d components, got %d" % (self.N, len(self.parts)))
        for j, t in enumerate(self.parts):
            if not isinstance(t, Tensor) or t.degree != j:
                raise ValueError("component %d must be a tensor of degree %d" % (j, j))

    @classmethod
    def from_components(cls, N: int, comps=None) -> "PhiMap":
        """comps: {j: Tensor of degree j}; a bare scalar is accepted for j = 0."""
        parts = [Tensor.zero(j) for j in range(N)]
        for j, t in (comps or {}).items():
            if not 0 <= j < N:
                raise ValueError("phi component index %d outside 0..%d" % (j, N - 1))
            if not isinstance(t, Tensor):
                t = Tensor(0, {(): scalar(t)}) if j == 0 else None
                if t is None:
                    raise ValueError("component %d must be a tensor" % j)
            parts[j] = t
        return cls(N, tuple(parts))

    @classmethod
    def zero(cls, N: int) -> "PhiMap":
        return cls.from_components(N)

    def __getitem__(self, j) -> Tensor:
        return self.parts[j]

    @property
    def constant(self):
        return self.parts[0].coeffs.get((), scalar(0))

    def max_letter(self) -> int:
        return max(t.max_letter() for t in self.parts)

    def lower_terms(self) -> dict:
        """-phi(f) as a {word: coeff} dict, i.e. the terms added to f."""
        out = {}
        for t in self.parts:
            for w, c in t.coeffs.items():
                out[w] = -c
        return out


@dataclass
class PbwVerdict:
    is_pbw: bool
    failed_condition: str | None = None
    # (w in W_{N+1}, {"alpha": ..., "D": {j: D_j(w)}})
    witness: tuple | None = None
    checked: int = 0

    def __bool__(self):
        return self.is_pbw


def _ratio(t: Tensor, f: Tensor):
    """c with t = c f, or None if t is not a multiple of f."""
    if not t:
        return scalar(0)
    w = next(iter(f.coeffs))
    c = t.coeffs.get(w, 0) / f.coeffs[w]
    return c if t == f.scale(c) else None


def _sides(w: Tensor, f: Tensor):
    """Coefficients c_k, d_k with w = sum c_k f x_k = sum d_k x_k f."""
    c, d = {}, {}
    for (k,), t in w.split_right(1).items():
        r = _ratio(t, f)
        if r is None:
            raise ValueError("element is not in R (x) V")
        c[k] = r
    for (k,), t in w.split_left(1).items():
        r = _ratio(t, f)
        if r is None:
            raise ValueError("element is not in V (x) R")
        d[k] = r
    return c, d


def _D(phi_j: Tensor, c: dict, d: dict) -> Tensor:
    out = Tensor.zero(phi_j.degree + 1)
    for k, a in c.items():
        out = out + (phi_j @ Tensor.monomial((k,))).scale(a)
    for k, a in d.items():
        out = out - (Tensor.monomial((k,)) @ phi_j).scale(a)
    return out


def pbw_check(P: Presentation, phi: PhiMap) -> PbwVerdict:
    if not P.is_single:
        raise ValueError("PBW check needs dim R = 1")
    if phi.N != P.N:
        raise ValueError("phi has %d components but N = %d" % (phi.N, P.N))
    if phi.max_letter() >= P.n:
        raise ValueError("phi uses a generator outside the presentation")
    if not criterion_check(P):
        raise NotKoszulError("PBW criterion needs an N-Koszul algebra")
    N, f = P.N, P.relation
    W = w_space(P, N + 1)
    for count, w in enumerate(W.rows, 1):
        c, d = _sides(w, f)
        Ds = {j: _D(phi[j], c, d) for j in range(N)}
        alpha = _ratio(Ds[N - 1], f)
        info = {"alpha": alpha, "D": Ds}
        if alpha is None:
            return PbwVerdict(False, "J1", (w, info), count)
        for j in range(1, N):
            if phi[j].scale(alpha) + Ds[j - 1]:
                return PbwVerdict(False, "J2(%d)" % j, (w, info), count)
        if alpha * phi.constant != 0:
            return PbwVerdict(False, "J3", (w, info), count)
    return PbwVerdict(True, checked=W.dim)


def _power_letter(f: Tensor):
    if len(f) != 1:
        return None
    (word,) = f.coeffs
    return word[0] if len(set(word)) == 1 else None


def pbw_power_closed_form(n: int, N: int, phi: PhiMap, letter: int = 0) -> bool:
    """For f = x^N: PBW iff every phi_j(f) is a polynomial in x alone."""
    if phi.N != N:
        raise ValueError("phi has %d components but N = %d" % (phi.N, N))
    if not 0 <= letter < n:
        raise ValueError("letter outside the generators")
    for j in range(1, N):
        if any(w != (letter,) * j for w in phi[j].coeffs):
            return False
    return True


def power_presentation(n: int, N: int, letter: int = 0) -> Presentation:
    return Presentation(n, N, (Tensor.monomial((letter,) * N),))


def symplectic_relation(n: int) -> Tensor:
    """sum_{i < n/2} [x_i, x_{i+n/2}]."""
    if n < 2 or n % 2:
        raise ValueError("symplectic relation needs an even n >= 2")
    h = n // 2
    f = Tensor.zero(2)
    for i in range(h):
        f = f + antisymmetriser([i, i + h])
    return f


HOCHSCHILD_NOTE = ("HH^i(U, U (x) U) = 0 for i != 2; recorded from the filtered "
                   "Koszul theory, not computed")


@dataclass
class SymplecticDeformation:
    n: int
    v: Tensor
    lam: object
    koszul_filtered: bool
    calabi_yau: bool
    pbw: PbwVerdict
    hochschild_note: str = field(default=HOCHSCHILD_NOTE)


def classify_symplectic_deformation(n: int, v: Tensor | None = None, lam=0,
                                    scale=1) -> SymplecticDeformation:
    """U = T(V) / (scale * (f - v - lam)) with f the symplectic relation; Calabi-Yau iff v = 0."""
    f = symplectic_relation(n)
    s = scalar(scale)
    if s == 0:
        raise ValueError("relation scale must be nonzero")
    v = v if v is not None else Tensor.zero(1)
    if v.degree != 1:
        raise ValueError("v must be a degree-1 tensor")
    P = Presentation(n, 2, (f.scale(s),))
    phi = PhiMap.from_components(2, {0: scalar(lam) * s, 1: v.scale(s)})
    verdict = pbw_check(P, phi)
    return SymplecticDeformation(n, v, scalar(lam), True, not v, verdict)


def constants_only_cy(P: Presentation, base_cy_dimension: int, phi: PhiMap) -> bool:
    """A deformation by a constant keeps the Calabi-Yau dimension of a Calabi-Yau A.

    For N = 2 the hypothesis on A is checked through the quadratic
    classification; otherwise it is taken from the caller.
    """
    if any(phi[j] for j in range(1, phi.N)):
        raise ValueError("only constant deformations (phi_j = 0 for j >= 1) are covered")
    if base_cy_dimension < 2:
        raise ValueError("Calabi-Yau dimension must be >= 2")
    if P.N == 2 and P.is_single and P.is_rational():
        prof = classify_quadratic(P)
        if not prof.calabi_yau or base_cy_dimension != 2:
            raise ValueError("A is not 2-Calabi-Yau")
    if not pbw_check(P, phi):
        raise ValueError("deformation is not PBW")
    return True
