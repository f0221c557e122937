"""Hilbert series: exact power-series algebra, Koszul series, recursions, GK dimension."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

PROVENANCES = ("koszul_formula", "recursion", "quotient_dims", "avoid_count")

# numeric GK probe: roots are polished by numpy to roughly this accuracy
ROOT_TOLERANCE = 1e-9
MODULUS_TOLERANCE = 1e-6
# roots closer than this are treated as one repeated root
CLUSTER_TOLERANCE = 1e-4


def _exact(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def _trim(p) -> tuple:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def poly_mul(a, b) -> tuple:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_divmod(a, b):
    """Exact division with remainder over Q."""
    b = _trim(b)
    if b == (0,):
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(x) for x in _trim(a)]
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    for k in range(len(r) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    rem = _trim(r[:len(b) - 1] or [0])
    return _trim(q), rem


def poly_gcd(a, b) -> tuple:
    """Monic gcd over Q."""
    a, b = _trim(a), _trim(b)
    while b != (0,):
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a == (0,):
        return a
    lead = Fraction(a[-1])
    return tuple(Fraction(x) / lead for x in a)


def series_inverse(den, D: int) -> list:
    """First D+1 coefficients of 1/den(t); den[0] must be nonzero."""
    den = list(den)
    if not den or den[0] == 0:
        raise ValueError("series is not invertible: zero constant term")
    c0 = Fraction(den[0])
    out = []
    for d in range(D + 1):
        s = Fraction(1 if d == 0 else 0)
        for k in range(1, min(d, len(den) - 1) + 1):
            s -= den[k] * out[d - k]
        out.append(s / c0)
    return [_exact(x) for x in out]


def series_mul(a, b, D: int) -> list:
    out = [0] * (D + 1)
    for i, x in enumerate(a[:D + 1]):
        if x:
            for j, y in enumerate(b[:D + 1 - i]):
                out[i + j] += x * y
    return [_exact(x) for x in out]


@dataclass(frozen=True)
class SeriesExpansion:
    coefficients: tuple
    provenance: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError("unknown provenance %r" % self.provenance)
        object.__setattr__(self, "coefficients", tuple(self.coefficients))

    @property
    def negative_degrees(self) -> list:
        """Degrees with a negative coefficient: impossible for a graded algebra."""
        return [d for d, a in enumerate(self.coefficients) if a < 0]

    @property
    def valid(self) -> bool:
        return bool(self.coefficients) and self.coefficients[0] == 1 and not self.negative_degrees

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, d):
        return self.coefficients[d]

    def agrees(self, other) -> bool:
        return list(self.coefficients) == list(getattr(other, "coefficients", other))


@dataclass(frozen=True)
class RationalSeries:
    """num(t) / den(t), coefficient tuples in increasing degree."""

    num: tuple
    den: tuple

    def __post_init__(self):
        num, den = _trim(self.num), _trim(self.den)
        if den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def expand(self, D: int) -> list:
        return series_mul(list(self.num), series_inverse(self.den, D), D)

    def reciprocal(self) -> "RationalSeries":
        return RationalSeries(self.den, self.num)

    def reduced(self) -> "RationalSeries":
        """Cancel the common factor of numerator and denominator."""
        g = poly_gcd(self.num, self.den)
        if len(g) <= 1:
            return self
        num, _ = poly_divmod(self.num, g)
        den, _ = poly_divmod(self.den, g)
        c = den[0]
        return RationalSeries(tuple(_exact(x / c) for x in num), tuple(_exact(x / c) for x in den))


def family_denominator(n: int, N: int) -> tuple:
    """1 - n t + t^N."""
    if N < 2:
        raise ValueError("N must be >= 2")
    return (1, -n) + (0,) * (N - 2) + (1,)


def power_relation_series(n: int, N: int) -> RationalSeries:
    """H_A for A = k<x_0..x_{n-1}>/(x_i^N).

    The W-spaces are one-dimensional in every degree >= N, so the alternating
    series is 1 - n t + t^N - t^{N+1} + t^{2N} - ..., i.e. the rational function
    1 - n t + t^N (1 - t) / (1 - t^N).
    """
    one_minus_tN = (1,) + (0,) * (N - 1) + (-1,)
    den = [0] * (N + 2)
    for i, c in enumerate(poly_mul((1, -n), one_minus_tN)):
        den[i] += c
    den[N] += 1
    den[N + 1] -= 1
    return RationalSeries(one_minus_tN, tuple(den))


def infinite_gldim_series(n: int, N: int, D: int) -> SeriesExpansion:
    return SeriesExpansion(power_relation_series(n, N).expand(D), "koszul_formula")


def recursion_expand(n: int, N: int, D: int) -> SeriesExpansion:
    """a_i = n a_{i-1} - a_{i-N}, a_0 = 1.  Negative terms are kept and flagged."""
    a = []
    for i in range(D + 1):
        if i == 0:
            a.append(1)
        else:
            a.append(n * a[i - 1] - (a[i - N] if i >= N else 0))
    return SeriesExpansion(a, "recursion")


def alternating_w_polynomial(P, D: int) -> list:
    """sum_i (-1)^i dim W_{nu(i)} t^{nu(i)}, truncated at degree D."""
    from .presentation import nu, w_space

    out = [0] * (D + 1)
    i = 0
    while nu(P.N, i) <= D:
        m = nu(P.N, i)
        dim = 1 if m == 0 else P.n if m == 1 else w_space(P, m).dim
        out[m] += (-1) ** i * dim
        i += 1
    return out


def _certify_koszul(P):
    from .koszul import NotKoszulError, criterion_check

    if P.is_single:
        v = criterion_check(P)
        if not v:
            raise NotKoszulError("not Koszul (overlap inclusion fails at m=%d)" % v.failing_m)
        return
    if all(len(f) == 1 for f in P.relations):
        from .monomial import MonomialSet, is_koszul_set

        C = MonomialSet(P.n, P.N, frozenset(next(iter(f.coeffs)) for f in P.relations))
        if not is_koszul_set(C):
            raise NotKoszulError("monomial relation set is not Koszul")
        return
    raise NotKoszulError("cannot certify Koszulity for this relation space")


def koszul_series(P, D: int, assume_koszul: bool = False) -> SeriesExpansion:
    """Invert the alternating W-dimension series (valid only for Koszul algebras)."""
    if not assume_koszul:
        _certify_koszul(P)
    P.check_degree(D)
    return SeriesExpansion(series_inverse(alternating_w_polynomial(P, D), D), "koszul_formula")


def quotient_series(P, D: int) -> SeriesExpansion:
    from .presentation import graded_dims

    return SeriesExpansion(graded_dims(P, D), "quotient_dims")


def avoid_series(f, n: int, D: int) -> SeriesExpansion:
    from .monomial import avoid_count

    return SeriesExpansion([avoid_count(f, n, d) for d in range(D + 1)], "avoid_count")


def family_series(n: int, N: int) -> RationalSeries:
    """Hilbert series attached to (n, N): 1/(1 - n t + t^N), or the x^N power family for n = 1.

    For n = 1 the polynomial 1 - t + t^N is not a Hilbert denominator (its
    inverse has negative terms); the only one-letter algebra is k[x]/(x^N).
    """
    if n == 1:
        return power_relation_series(1, N)
    return RationalSeries((1,), family_denominator(n, N))


def gk_closed_form(n: int, N: int):
    if n < 1 or N < 2:
        raise ValueError("need n >= 1 and N >= 2")
    if n == 1:
        return 0
    if n == 2 and N == 2:
        return 2
    return math.inf


def gk_numeric(series: RationalSeries, tolerance: float = MODULUS_TOLERANCE):
    """Growth of the coefficients of num/den read off the poles.

    After exact cancellation: no poles means a polynomial (GK 0); a pole
    inside the unit disc means exponential growth (GK infinite); poles all on
    the unit circle give polynomial growth of degree (max multiplicity) - 1.
    """
    import numpy as np

    r = series.reduced()
    den = [float(x) for x in r.den]
    if len(den) == 1:
        return 0
    roots = np.roots(den[::-1])
    roots = _polish(roots, den)
    moduli = np.abs(roots)
    if np.any(moduli < 1 - tolerance):
        return math.inf
    unit = [z for z, m in zip(roots, moduli) if abs(m - 1) <= tolerance]
    if not unit:
        return 0
    best = 0
    for z in unit:
        best = max(best, sum(1 for w in unit if abs(z - w) <= CLUSTER_TOLERANCE))
    return best


def _polish(roots, den, steps: int = 50):
    """Newton refinement of simple roots to ROOT_TOLERANCE; repeated roots are left as found."""
    import numpy as np

    p = np.polynomial.Polynomial(den)
    dp = p.deriv()
    out = []
    for z in roots:
        z = complex(z)
        for _ in range(steps):
            d = dp(z)
            if abs(d) < 1e-12:
                break
            step = p(z) / d
            z -= step
            if abs(step) < ROOT_TOLERANCE:
                break
        out.append(z)
    return np.array(out)


def gk_dimension(n: int, N: int, mode: str = "closed_form", tolerance: float = MODULUS_TOLERANCE):
    if mode == "closed_form":
        return gk_closed_form(n, N)
    if mode == "numeric":
        return gk_numeric(family_series(n, N), tolerance)
    raise ValueError("mode must be 'closed_form' or 'numeric'")
