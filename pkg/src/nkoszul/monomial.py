"""Monomial relations: Koszulity by overlaps, W-spaces, profiles, word counts, census."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exactlin import Subspace, Tensor, span, words
from .hilbert import RationalSeries, power_relation_series
from .presentation import Presentation, ResourceError

DEFAULT_CENSUS_WORD_CAP = 64
DEFAULT_CENSUS_NODE_CAP = 5_000_000
DEFAULT_COUNT_CAP = 100_000


@dataclass(frozen=True)
class MonomialSet:
    n: int
    N: int
    words: frozenset

    def __post_init__(self):
        ws = frozenset(tuple(w) for w in self.words)
        for w in ws:
            if len(w) != self.N:
                raise ValueError("word %r is not of degree N=%d" % (w, self.N))
            if any(not 0 <= x < self.n for x in w):
                raise ValueError("word %r has a letter outside [0, %d)" % (w, self.n))
        object.__setattr__(self, "words", ws)

    def presentation(self, **kw) -> Presentation:
        return Presentation(self.n, self.N,
                            tuple(Tensor.monomial(w) for w in sorted(self.words)), **kw)


@dataclass
class SetVerdict:
    is_koszul: bool
    counterexample: tuple | None = None

    def __bool__(self):
        return self.is_koszul


def _violations(u: tuple, v: tuple, C, N: int):
    """Yield (m, overlap word, middle factor) for overlaps u...v of degree N+m failing the test."""
    for m in range(2, N):
        # u's last N-m letters must equal v's first N-m letters
        if u[m:] == v[:N - m]:
            a = u + v[N - m:]
            mid = a[m - 1:m - 1 + N]
            if mid not in C:
                yield m, a, mid


def is_koszul_set(C: MonomialSet) -> SetVerdict:
    """Every overlap of degree N+m (2 <= m <= N-1) with first and last factor in C
    must have its factor of index m in C."""
    ws = sorted(C.words)
    for m in range(2, C.N):
        for u in ws:
            for v in ws:
                if u[m:] == v[:C.N - m]:
                    a = u + v[C.N - m:]
                    if a[m - 1:m - 1 + C.N] not in C.words:
                        return SetVerdict(False, a)
    return SetVerdict(True)


def borders(f: tuple) -> list:
    """Lengths of all proper borders of f, longest first (failure-function chain)."""
    fail = failure_function(f)
    out = []
    b = fail[-1] if f else 0
    while b > 0:
        out.append(b)
        b = fail[b - 1]
    return out


def failure_function(f: tuple) -> list:
    """fail[i] = length of the longest proper border of f[:i+1]."""
    fail = [0] * len(f)
    k = 0
    for i in range(1, len(f)):
        while k and f[i] != f[k]:
            k = fail[k - 1]
        if f[i] == f[k]:
            k += 1
        fail[i] = k
    return fail


def is_koszul_single(f) -> bool:
    """False iff f has a period m in 2..N-1 whose length-m prefix is not a single repeated letter.

    A period m of f is the same as a border of length N - m, so the scan
    walks the failure-function chain.
    """
    f = tuple(f)
    N = len(f)
    if N < 2:
        raise ValueError("monomial relation must have degree >= 2")
    for b in borders(f):
        m = N - b
        if 2 <= m <= N - 1 and len(set(f[:m])) > 1:
            return False
    return True


def _power_letter(f: tuple):
    return f[0] if len(set(f)) == 1 else None


def monomial_w_space(f, m: int, n: int) -> Subspace:
    """W_m for the single monomial relation f, m >= N + 1: k x_i^m if f = x_i^N, else 0."""
    f = tuple(f)
    if m < len(f) + 1:
        raise ValueError("closed form holds for m >= N + 1")
    i = _power_letter(f)
    if i is None:
        return Subspace.zero(n, m)
    return span([Tensor.monomial((i,) * m)], m, n)


@dataclass
class MonomialProfile:
    koszul: bool
    global_dimension: float
    hilbert_series: RationalSeries
    gk_dimension: float
    as_gorenstein: bool

    @property
    def hilbert_denominator(self) -> RationalSeries:
        """1 / H_A(t) as a rational function."""
        return self.hilbert_series.reciprocal()


def monomial_profile(f, n: int) -> MonomialProfile:
    f = tuple(f)
    N = len(f)
    if not is_koszul_single(f):
        raise ValueError("profile is only defined for Koszul monomials")
    if _power_letter(f) is not None:
        return MonomialProfile(True, math.inf, power_relation_series(n, N),
                               0 if n == 1 else math.inf, False)
    # non-power words need two distinct letters, so n >= 2 here
    H = RationalSeries((1,), (1, -n) + (0,) * (N - 2) + (1,))
    gk = 2 if n == 2 and N == 2 else math.inf
    return MonomialProfile(True, 2, H, gk, False)


def avoid_count(f, n: int, d: int, cap: int = DEFAULT_COUNT_CAP) -> int:
    """Number of words of length d over n letters not containing f as a factor.

    Dynamic program over the states of the pattern-matching automaton
    (state = length of the longest suffix that is a prefix of f).
    """
    f = tuple(f)
    if d > cap:
        raise ResourceError("count_cap", cap, d)
    N = len(f)
    if N == 0:
        return 0
    fail = failure_function(f)
    delta = [[0] * n for _ in range(N)]
    for q in range(N):
        for a in range(n):
            k = q
            while k and f[k] != a:
                k = fail[k - 1]
            delta[q][a] = k + 1 if f[k] == a else 0
    counts = [0] * N
    counts[0] = 1
    for _ in range(d):
        nxt = [0] * N
        for q, c in enumerate(counts):
            if c:
                for a in range(n):
                    t = delta[q][a]
                    if t < N:
                        nxt[t] += c
        counts = nxt
    return sum(counts)


def koszul_census(n: int, N: int, p: int, word_cap: int = DEFAULT_CENSUS_WORD_CAP,
                  node_cap: int = DEFAULT_CENSUS_NODE_CAP) -> int:
    """Number of p-element sets C of degree-N words over n letters that are N-Koszul.

    Subsets are streamed in lexicographic order.  A violated overlap can only
    be repaired by adding its middle factor later, so a branch dies as soon as
    a missing middle factor sorts before the next admissible word, or more
    repairs are pending than slots remain.
    """
    total = n ** N
    if total > word_cap:
        raise ResourceError("census_word_cap", word_cap, total)
    if not 0 <= p <= total:
        raise ValueError("need 0 <= p <= n^N")
    ws = list(words(n, N))
    index = {w: i for i, w in enumerate(ws)}
    nodes = 0
    count = 0
    chosen: list = []
    chosen_set: set = set()

    def pending_after(new: tuple, pending: dict) -> dict | None:
        # requirement word index -> multiplicity of violations needing it
        req = dict(pending)
        req.pop(index[new], None)
        for u in chosen:
            for a, b in ((u, new), (new, u)):
                for _, _, mid in _violations(a, b, chosen_set, N):
                    req[index[mid]] = req.get(index[mid], 0) + 1
        for _, _, mid in _violations(new, new, chosen_set, N):
            req[index[mid]] = req.get(index[mid], 0) + 1
        return req

    def rec(start: int, pending: dict):
        nonlocal nodes, count
        nodes += 1
        if nodes > node_cap:
            raise ResourceError("census_node_cap", node_cap)
        slots = p - len(chosen)
        live = {k for k in pending if ws[k] not in chosen_set}
        if len(live) > slots or (live and min(live) < start):
            return
        if slots == 0:
            count += 1
            return
        for i in range(start, total - slots + 1):
            w = ws[i]
            chosen.append(w)
            chosen_set.add(w)
            req = pending_after(w, pending)
            rec(i + 1, req)
            chosen.pop()
            chosen_set.discard(w)

    rec(0, {})
    return count
