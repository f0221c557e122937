"""Exact scalars, word-indexed tensors and canonical subspaces of V^{(x)m}.

Generators are 0-indexed: the basis x_1..x_n of V is stored as letters 0..n-1.
A word is a tuple of letters; a tensor of degree m is a sparse map from words
of length m to exact scalars.  Subspaces are stored in reduced row-echelon
form where the pivot of a row is its lexicographically largest word, which
makes equality of subspaces a structural comparison.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

Word = tuple
# exact rationals; mpq compares and hashes consistently with Fraction and int
Q = mpq
_MPQ = type(mpq(0))


class DegreeMismatch(ValueError):
    pass


class CharacteristicError(ValueError):
    """Raised when a characteristic-zero-only routine sees prime-field data."""


class GF:
    """Element of the prime field Z/pZ.

    Supports the same arithmetic protocol as Fraction so tensors and
    subspaces work unchanged over either field.
    """

    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, GF):
            v = v.v
        elif isinstance(v, (Fraction, _MPQ)):
            v = int(v.numerator) * pow(int(v.denominator), -1, p)
        self.v = int(v) % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise ValueError("mixing prime fields %d and %d" % (self.p, other.p))
            return other.v
        if isinstance(other, (int, Fraction, _MPQ)):
            return GF(other, self.p).v
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else GF(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return GF(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return GF(other, self.p) / self

    def __neg__(self):
        return GF(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.v == o

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "GF(%d, %d)" % (self.v, self.p)


def scalar(x):
    """Coerce ints, Fractions and strings like ``"-3/4"`` to an exact scalar."""
    if isinstance(x, (_MPQ, GF)):
        return x
    if isinstance(x, float):
        raise TypeError("floating-point coefficients are not exact")
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    return mpq(x)


def is_rational(x) -> bool:
    return isinstance(x, (int, Fraction, _MPQ))


def words(n: int, m: int) -> Iterator[Word]:
    """All words of length m over n letters, in lexicographic order."""
    return itertools.product(range(n), repeat=m)


class Tensor:
    """Homogeneous element of V^{(x)degree}, stored sparsely.

    Instances are treated as immutable; arithmetic returns new tensors and
    never stores zero coefficients.
    """

    __slots__ = ("degree", "coeffs", "_hash")

    def __init__(self, degree: int, coeffs: Mapping[Word, object] | None = None):
        self.degree = degree
        clean = {}
        for w, c in (coeffs or {}).items():
            w = tuple(w)
            if len(w) != degree:
                raise DegreeMismatch(
                    "word %r has length %d, expected %d" % (w, len(w), degree))
            c = scalar(c)
            if c != 0:
                clean[w] = clean.get(w, 0) + c
                if clean[w] == 0:
                    del clean[w]
        self.coeffs = clean
        self._hash = None

    @classmethod
    def _raw(cls, degree: int, coeffs: dict) -> "Tensor":
        t = cls.__new__(cls)
        t.degree = degree
        t.coeffs = coeffs
        t._hash = None
        return t

    @classmethod
    def monomial(cls, word: Sequence[int], coeff=1) -> "Tensor":
        return cls(len(word), {tuple(word): coeff})

    @classmethod
    def zero(cls, degree: int) -> "Tensor":
        return cls._raw(degree, {})

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __getitem__(self, word) -> object:
        return self.coeffs.get(tuple(word), 0)

    def _check(self, other: "Tensor"):
        if other.degree != self.degree:
            raise DegreeMismatch(
                "degrees %d and %d differ" % (self.degree, other.degree))

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, 0) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return Tensor._raw(self.degree, out)

    def __neg__(self) -> "Tensor":
        return Tensor._raw(self.degree, {w: -c for w, c in self.coeffs.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def scale(self, c) -> "Tensor":
        c = scalar(c)
        if c == 0:
            return Tensor.zero(self.degree)
        return Tensor._raw(self.degree, {w: c * a for w, a in self.coeffs.items()})

    __rmul__ = scale

    def __matmul__(self, other: "Tensor") -> "Tensor":
        """Tensor product: words are concatenated."""
        out = {}
        for u, a in self.coeffs.items():
            for v, b in other.coeffs.items():
                out[u + v] = a * b
        return Tensor._raw(self.degree + other.degree, out)

    def max_letter(self) -> int:
        return max((max(w) for w in self.coeffs if w), default=-1)

    def leading_word(self) -> Word:
        return max(self.coeffs)

    def split_left(self, k: int) -> dict:
        """Write self = sum_u u (x) t_u over words u of length k; returns {u: t_u}."""
        parts: dict = {}
        for w, c in self.coeffs.items():
            parts.setdefault(w[:k], {})[w[k:]] = c
        return {u: Tensor._raw(self.degree - k, d) for u, d in parts.items()}

    def split_right(self, k: int) -> dict:
        """Write self = sum_u t_u (x) u over words u of length k; returns {u: t_u}."""
        parts: dict = {}
        cut = self.degree - k
        for w, c in self.coeffs.items():
            parts.setdefault(w[cut:], {})[w[:cut]] = c
        return {u: Tensor._raw(cut, d) for u, d in parts.items()}

    def permute_positions(self, perm: Sequence[int]) -> "Tensor":
        """Natural action of a permutation of tensor positions."""
        out = {}
        for w, c in self.coeffs.items():
            out[tuple(w[perm[i]] for i in range(self.degree))] = c
        return Tensor._raw(self.degree, out)

    def substitute(self, images: Sequence["Tensor"]) -> "Tensor":
        """Apply the linear change of generators x_i -> images[i] (degree-1 tensors)."""
        acc: dict = {}
        for w, c in self.coeffs.items():
            term = Tensor._raw(0, {(): c})
            for letter in w:
                term = term @ images[letter]
            for u, a in term.coeffs.items():
                s = acc.get(u, 0) + a
                if s == 0:
                    acc.pop(u, None)
                else:
                    acc[u] = s
        return Tensor._raw(self.degree, acc)

    def __eq__(self, other):
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.degree, frozenset(self.coeffs.items())))
        return self._hash

    def __repr__(self):
        if not self.coeffs:
            return "Tensor(0, degree=%d)" % self.degree
        parts = []
        for w in sorted(self.coeffs, reverse=True):
            c = self.coeffs[w]
            name = "*".join("x%d" % i for i in w) or "1"
            parts.append("%s*%s" % (c, name))
        return " + ".join(parts)


def _sub_multiple(v: dict, c, row: dict) -> None:
    """v -= c * row, in place."""
    for w, a in row.items():
        s = v.get(w, 0) - c * a
        if s == 0:
            v.pop(w, None)
        else:
            v[w] = s


def _reduce_against(rows: dict, v: dict) -> dict:
    v = dict(v)
    # rows carry no foreign pivots, so one pass over v's original words suffices
    for w in [w for w in v if w in rows]:
        c = v.get(w)
        if c:
            _sub_multiple(v, c, rows[w])
    return v


class Echelon:
    """Mutable reduced row-echelon builder; the engine behind Subspace.

    ``rows`` maps each pivot word to its row (a dict with coefficient 1 at
    the pivot).  The pivot of a row is its largest key and no pivot occurs in
    any other row.  Keys only need to be hashable and mutually comparable.
    """

    __slots__ = ("rows",)

    def __init__(self, rows: dict | None = None):
        self.rows = {} if rows is None else rows

    def reduce(self, v: dict) -> dict:
        """Reduce a copy of v against the rows; the result has no pivot words."""
        return _reduce_against(self.rows, v)

    def add(self, v: dict) -> bool:
        """Insert v into the span; returns True if the dimension grew."""
        v = _reduce_against(self.rows, v)
        if not v:
            return False
        p = max(v)
        lead = v[p]
        if lead != 1:
            v = {w: c / lead for w, c in v.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c is not None:
                _sub_multiple(row, c, v)
        self.rows[p] = v
        return True

    def __len__(self):
        return len(self.rows)


class Subspace:
    """Linear subspace of V^{(x)degree}, dim V = n, in canonical form.

    Two Subspace values compare equal exactly when they span the same set
    of vectors.
    """

    __slots__ = ("n", "degree", "_rows", "_key", "_hash")

    def __init__(self, n: int, degree: int, rows: dict):
        # rows: pivot word -> row dict, already in reduced echelon form
        self.n = n
        self.degree = degree
        self._rows = rows
        self._key = None
        self._hash = None

    @classmethod
    def zero(cls, n: int, degree: int) -> "Subspace":
        return cls(n, degree, {})

    @classmethod
    def full(cls, n: int, degree: int) -> "Subspace":
        return cls(n, degree, {w: {w: scalar(1)} for w in words(n, degree)})

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self) -> list:
        return sorted(self._rows, reverse=True)

    @property
    def rows(self) -> list:
        """Basis tensors, ordered by strictly decreasing pivot word."""
        return [Tensor._raw(self.degree, dict(self._rows[p])) for p in self.pivots]

    def echelon(self) -> Echelon:
        return Echelon({p: dict(r) for p, r in self._rows.items()})

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.n ** self.degree

    def reduce(self, t: Tensor) -> Tensor:
        """Residue of t modulo this subspace (its canonical quotient representative)."""
        self._check_tensor(t)
        return Tensor._raw(self.degree, _reduce_against(self._rows, t.coeffs))

    def __contains__(self, t: Tensor) -> bool:
        return not self.reduce(t)

    def coordinates(self, t: Tensor) -> dict:
        """Coefficients of t in the row basis, keyed by pivot word (t must lie in self)."""
        return {w: c for w, c in t.coeffs.items() if w in self._rows}

    def _check_tensor(self, t: Tensor):
        if t.degree != self.degree:
            raise DegreeMismatch(
                "tensor of degree %d vs subspace of degree %d" % (t.degree, self.degree))

    def _check(self, other: "Subspace"):
        if other.degree != self.degree or other.n != self.n:
            raise DegreeMismatch(
                "ambient V^%d (n=%d) vs V^%d (n=%d)"
                % (self.degree, self.n, other.degree, other.n))

    def _frozen(self):
        if self._key is None:
            self._key = tuple(
                (p, tuple(sorted(self._rows[p].items()))) for p in self.pivots)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n == other.n and self.degree == other.degree
                and len(self._rows) == len(other._rows)
                and self._frozen() == other._frozen())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, self.degree, self._frozen()))
        return self._hash

    def __repr__(self):
        return "Subspace(n=%d, degree=%d, dim=%d)" % (self.n, self.degree, self.dim)


def span(vectors: Iterable[Tensor], degree: int, n: int) -> Subspace:
    """Canonical basis of the span of degree-``degree`` tensors over n letters."""
    ech = Echelon()
    for v in vectors:
        if v.degree != degree:
            raise DegreeMismatch("vector of degree %d in a span of degree %d"
                                 % (v.degree, degree))
        if v.coeffs and v.max_letter() >= n:
            raise ValueError("generator index %d >= n=%d" % (v.max_letter(), n))
        ech.add(v.coeffs)
    return Subspace(n, degree, ech.rows)


def subspace_sum(S: Subspace, T: Subspace) -> Subspace:
    S._check(T)
    if S.dim < T.dim:
        S, T = T, S
    if T.is_zero() or S.is_full():
        return S
    ech = S.echelon()
    grew = False
    for r in T._rows.values():
        grew |= ech.add(r)
    return Subspace(S.n, S.degree, ech.rows) if grew else S


def contains(S: Subspace, T: Subspace) -> bool:
    """True iff T is a subspace of S."""
    S._check(T)
    if T.dim > S.dim:
        return False
    if S.is_full() or T.is_zero():
        return True
    return all(not _reduce_against(S._rows, r) for r in T._rows.values())


def _dependencies(vectors: list) -> list:
    """Basis of {a : sum_k a_k vectors[k] = 0}, as sparse dicts k -> a_k.

    Forward elimination only (leading-term reduction); no back substitution
    is needed to read off the kernel.
    """
    table: dict = {}
    kernel = []
    for k, r in enumerate(vectors):
        v = dict(r)
        combo = {k: 1}
        while v:
            p = max(v)
            hit = table.get(p)
            if hit is None:
                lead = v[p]
                table[p] = ({w: c / lead for w, c in v.items()},
                            {j: c / lead for j, c in combo.items()})
                break
            row, rcombo = hit
            c = v[p]
            _sub_multiple(v, c, row)
            _sub_multiple(combo, c, rcombo)
        else:
            kernel.append(combo)
    return kernel


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """Exact intersection.

    Each row t_k of the smaller space is reduced against the echelon form of
    the larger one; a linear dependency sum a_k r_k = 0 among the residues
    means sum a_k t_k lies in both spaces, and all common vectors arise so.
    """
    S._check(T)
    if S.is_zero() or T.is_full():
        return S
    if T.is_zero() or S.is_full():
        return T
    if T.dim > S.dim:
        S, T = T, S
    t_rows = [T._rows[p] for p in T.pivots]
    residues = [_reduce_against(S._rows, r) for r in t_rows]
    if not any(residues):
        return T
    out = Echelon()
    for combo in _dependencies(residues):
        vec: dict = {}
        for k, a in combo.items():
            for w, c in t_rows[k].items():
                s_ = vec.get(w, 0) + a * c
                if s_ == 0:
                    vec.pop(w, None)
                else:
                    vec[w] = s_
        out.add(vec)
    if len(out) == S.dim:
        return S
    return Subspace(S.n, S.degree, out.rows)


def extend(S: Subspace, left: int, right: int) -> Subspace:
    """V^{(x)left} (x) S (x) V^{(x)right}; already in canonical form, no reduction needed."""
    if left == 0 and right == 0:
        return S
    n = S.n
    rows = {}
    lefts = list(words(n, left))
    rights = list(words(n, right))
    for p, r in S._rows.items():
        for u in lefts:
            for v in rights:
                rows[u + p + v] = {u + w + v: c for w, c in r.items()}
    return Subspace(n, S.degree + left + right, rows)


def rank(vectors: Iterable[dict]) -> int:
    """Rank of a family of sparse vectors with arbitrary hashable, ordered keys."""
    ech = Echelon()
    for v in vectors:
        ech.add(v)
    return len(ech)
