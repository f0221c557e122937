"""Rewriting with a single relation: rules, normal forms, self-overlap confluence, word counts.

Words are compared degree first, then letterwise by rank; the default rank
is the letter index itself, and any permutation of the letters can be
passed instead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactlin import Tensor, scalar
from .monomial import avoid_count


def word_key(word, order=None):
    if order is None:
        return (len(word), tuple(word))
    return (len(word), tuple(order[x] for x in word))


def _check_order(order, n):
    if order is None:
        return None
    order = tuple(order)
    if sorted(order) != list(range(len(order))) or len(order) < n:
        raise ValueError("order must rank every letter with a permutation of 0..n-1")
    return order


@dataclass(frozen=True)
class RewriteRule:
    """lead -> tail, where tail maps words (any degree) to coefficients."""

    lead: tuple
    tail: dict = field(hash=False)
    order: tuple | None = None

    def __post_init__(self):
        key = word_key(self.lead, self.order)
        for w in self.tail:
            if not word_key(w, self.order) < key:
                raise ValueError("tail word %r is not smaller than the lead %r" % (w, self.lead))

    @property
    def N(self) -> int:
        return len(self.lead)

    @property
    def homogeneous(self) -> bool:
        return all(len(w) == len(self.lead) for w in self.tail)

    def tail_tensor(self) -> Tensor:
        if not self.homogeneous:
            raise ValueError("tail has terms of lower degree")
        return Tensor(len(self.lead), self.tail)


def make_rule(f: Tensor, order=None, lower=None) -> RewriteRule:
    """Solve f + lower = 0 for the order-largest word of f.

    ``lower`` holds optional terms of degree < N (a filtered deformation).
    """
    if not f:
        raise ValueError("cannot orient the zero relation")
    order = _check_order(order, f.max_letter() + 1)
    lead = max(f.coeffs, key=lambda w: word_key(w, order))
    c = f.coeffs[lead]
    tail = {}
    for w, a in f.coeffs.items():
        if w != lead:
            tail[w] = -a / c
    for w, a in (lower or {}).items():
        w = tuple(w)
        if len(w) >= len(lead):
            raise ValueError("lower-order term %r is not of degree < N" % (w,))
        a = scalar(a)
        if a:
            tail[w] = tail.get(w, 0) - a / c
    return RewriteRule(lead, {w: a for w, a in tail.items() if a}, order)


def _find(word, lead) -> int:
    N = len(lead)
    for i in range(len(word) - N + 1):
        if word[i:i + N] == lead:
            return i
    return -1


def _add(poly, word, c):
    v = poly.get(word, 0) + c
    if v:
        poly[word] = v
    else:
        poly.pop(word, None)


def reduce_poly(rule: RewriteRule, poly: dict) -> dict:
    """Rewrite until no word contains the lead; always rewrites the largest reducible word first."""
    poly = {tuple(w): c for w, c in poly.items() if c}
    lead = rule.lead
    N = len(lead)
    pending = {w for w in poly if _find(w, lead) >= 0}
    while pending:
        w = max(pending, key=lambda u: word_key(u, rule.order))
        pending.discard(w)
        c = poly.pop(w, None)
        if c is None:
            continue
        i = _find(w, lead)
        pre, post = w[:i], w[i + N:]
        for t, a in rule.tail.items():
            nw = pre + t + post
            _add(poly, nw, c * a)
            if nw in poly and _find(nw, lead) >= 0:
                pending.add(nw)
    return poly


def normal_form(rule: RewriteRule, t):
    """Normal form of a Tensor (or of a {word: coeff} dict for inhomogeneous rules)."""
    if isinstance(t, Tensor):
        out = reduce_poly(rule, t.coeffs)
        if all(len(w) == t.degree for w in out):
            return Tensor(t.degree, out)
        return out
    return reduce_poly(rule, t)


@dataclass
class ConfluenceReport:
    ambiguities: list
    resolved: list
    # for each ambiguity: (left reduction normal form, right reduction normal form)
    normal_forms: list = field(default_factory=list)

    @property
    def confluent(self) -> bool:
        return all(self.resolved)

    def __bool__(self):
        return self.confluent


def self_overlaps(lead) -> list:
    """Words lead + lead[k:] where the last N-k letters of lead equal its first N-k, k = 1..N-1."""
    lead = tuple(lead)
    N = len(lead)
    return [(k, lead + lead[N - k:]) for k in range(1, N) if lead[k:] == lead[:N - k]]


def confluence_check(rule: RewriteRule) -> ConfluenceReport:
    """Resolve every self-overlap of the lead (degrees N+1 .. 2N-1) both ways."""
    rep = ConfluenceReport([], [], [])
    lead = rule.lead
    N = len(lead)
    for k, amb in self_overlaps(lead):
        # left: rewrite the prefix occurrence; right: the occurrence starting at k
        left = {t + amb[N:]: a for t, a in rule.tail.items()}
        right = {amb[:k] + t: a for t, a in rule.tail.items()}
        nl, nr = reduce_poly(rule, left), reduce_poly(rule, right)
        rep.ambiguities.append(amb)
        rep.resolved.append(nl == nr)
        rep.normal_forms.append((nl, nr))
    return rep


def irreducible_count(rule: RewriteRule, n: int, d: int) -> int:
    """Degree-d words over n letters without the lead as a factor."""
    return avoid_count(rule.lead, n, d)


def filtered_irreducible_count(rule: RewriteRule, n: int, d: int) -> int:
    """Irreducible words of length <= d (a basis of the filtration piece F_d when confluent)."""
    return sum(irreducible_count(rule, n, i) for i in range(d + 1))
