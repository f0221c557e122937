"""Bounded-degree verification that single-relation algebras are distributive.

For each degree m, the subspaces V^i (x) R (x) V^j (i + N + j = m) generate a
finite sublattice of the subspace lattice of V^m.  We materialise it by
closing under sum and intersection, then test every triple.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .exactlin import Subspace, extend, intersect, subspace_sum
from .presentation import Presentation, ResourceError

DEFAULT_LATTICE_CAP = 20_000


@dataclass
class Lattice:
    degree: int
    elements: list
    generator_flags: list
    # memoised operation tables: (i, j) with i <= j -> element index
    joins: dict = field(default_factory=dict, repr=False)
    meets: dict = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.elements)

    @property
    def generators(self) -> list:
        return [e for e, g in zip(self.elements, self.generator_flags) if g]


class _Ops:
    """Interning wrapper computing joins/meets by element index."""

    def __init__(self, L: Lattice, cap: int | None = None):
        self.L = L
        self.cap = cap
        self.index = {e: i for i, e in enumerate(L.elements)}

    def intern(self, S: Subspace) -> int:
        i = self.index.get(S)
        if i is None:
            if self.cap is not None and len(self.L.elements) >= self.cap:
                raise ResourceError("lattice_cap", self.cap, len(self.L.elements) + 1)
            i = len(self.L.elements)
            self.L.elements.append(S)
            self.L.generator_flags.append(False)
            self.index[S] = i
        return i

    def join(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        k = self.L.joins.get(key)
        if k is None:
            el = self.L.elements
            k = self.intern(subspace_sum(el[i], el[j]))
            self.L.joins[key] = k
        return k

    def meet(self, i: int, j: int) -> int:
        key = (i, j) if i <= j else (j, i)
        k = self.L.meets.get(key)
        if k is None:
            el = self.L.elements
            k = self.intern(intersect(el[i], el[j]))
            self.L.meets[key] = k
        return k


def lattice_from(elements, close: bool = False, cap: int = DEFAULT_LATTICE_CAP) -> Lattice:
    """Wrap explicitly given subspaces (deduplicated), optionally closing them."""
    elements = list(elements)
    if not elements:
        raise ValueError("empty lattice")
    L = Lattice(elements[0].degree, [], [])
    ops = _Ops(L)
    for e in elements:
        i = ops.intern(e)
        L.generator_flags[i] = True
    return close_lattice(L, cap) if close else L


def close_lattice(L: Lattice, cap: int = DEFAULT_LATTICE_CAP) -> Lattice:
    """Fixed-point closure under sum and intersection (worklist over new pairs)."""
    ops = _Ops(L, cap)
    done = 0
    # invariant: all pairs among elements[:done] have been combined
    while done < len(L.elements):
        k = done
        for i in range(k + 1):
            lo = ops.meet(i, k)
            # comparable pair: the join is the larger element, no algebra needed
            if lo == i:
                L.joins[(i, k)] = k
            elif lo == k:
                L.joins[(i, k)] = i
            else:
                ops.join(i, k)
        done += 1
    return L


def generate_sublattice(P: Presentation, m: int, cap: int = DEFAULT_LATTICE_CAP) -> Lattice:
    """Sublattice of L(V^m) generated by the m - N + 1 spaces V^i (x) R (x) V^j."""
    if m < P.N:
        raise ValueError("need m >= N (got m=%d, N=%d)" % (m, P.N))
    P.check_degree(m)
    gens = [extend(P.R, i, m - P.N - i) for i in range(m - P.N + 1)]
    return lattice_from(gens, close=True, cap=cap)


def check_distributive(L: Lattice):
    """None if every triple is distributive, else the first violating (E, F, G).

    Triples with a repeated element are always distributive, so only
    unordered distinct triples are scanned, each with all three choices of
    the meet side E (F and G play symmetric roles).
    """
    # work on a copy: for a non-closed family, results get interned as we go
    work = Lattice(L.degree, list(L.elements), list(L.generator_flags),
                   dict(L.joins), dict(L.meets))
    ops = _Ops(work)
    el = work.elements
    size = len(L.elements)
    for a, b, c in itertools.combinations(range(size), 3):
        for e, f, g in ((a, b, c), (b, a, c), (c, a, b)):
            lhs = ops.meet(e, ops.join(f, g))
            rhs = ops.join(ops.meet(e, f), ops.meet(e, g))
            if lhs != rhs:
                return (el[e], el[f], el[g])
    return None


@dataclass
class DegreeResult:
    m: int
    lattice_size: int
    distributive: bool
    violation: tuple | None = None


@dataclass
class GerasimovReport:
    n: int
    N: int
    m_max: int
    results: list

    @property
    def all_pass(self) -> bool:
        return all(r.distributive for r in self.results)

    @property
    def violations(self) -> int:
        return sum(not r.distributive for r in self.results)


def gerasimov_suite(P: Presentation, m_max: int, cap: int = DEFAULT_LATTICE_CAP,
                    require_single: bool = True) -> GerasimovReport:
    """Generate and check the sublattices for every m in N..m_max."""
    if require_single and not P.is_single:
        raise ValueError("distributivity is only guaranteed for dim R = 1 "
                         "(pass require_single=False for control runs)")
    results = []
    for m in range(P.N, m_max + 1):
        L = generate_sublattice(P, m, cap)
        bad = check_distributive(L)
        results.append(DegreeResult(m, len(L), bad is None, bad))
    return GerasimovReport(P.n, P.N, m_max, results)
