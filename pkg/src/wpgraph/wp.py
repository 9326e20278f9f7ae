"""Membership in the classes W_p, well-coveredness and the W_2 structure audit.

``is_wp`` is the definitional test: every ``p``-tuple of pairwise disjoint
independent sets is checked for an extension to ``p`` pairwise disjoint
maximum independent sets.  Tuples are visited in lexicographic order of
their members (each member ordered as in
:func:`wpgraph.enumeration.independent_sets`), so the reported failing
tuple is the lexicographically smallest one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .enumeration import independence_number, independent_sets, is_independent, maximum_independent_sets
from .graph import Graph, NotIndependent, bits, component_masks, labels, localization

DEFAULT_MAX_N = 14
DEFAULT_MAX_OMEGA = 5000


class CapExceeded(RuntimeError):
    pass


class BadTuple(ValueError):
    pass


class HasIsolatedVertex(ValueError):
    pass


class AMaximum(ValueError):
    pass


@dataclass(frozen=True)
class WpWitness:
    p: int
    member: bool
    failing_tuple: Optional[Tuple[int, ...]] = None
    extension: Optional[Tuple[int, ...]] = None

    @property
    def verdict(self) -> str:
        return "member" if self.member else "non_member"

    def __bool__(self) -> bool:
        return self.member


class OmegaIndex:
    """Bitset view of Omega: sets are addressed by their position in ``omega``."""

    def __init__(self, g: Graph, omega: Sequence[int]):
        self.omega = list(omega)
        self.all = (1 << len(self.omega)) - 1
        self.containing = [0] * g.n
        for i, s in enumerate(self.omega):
            for v in bits(s):
                self.containing[v] |= 1 << i
        self.disjoint = []
        for s in self.omega:
            d = 0
            for j, t in enumerate(self.omega):
                if not s & t:
                    d |= 1 << j
            self.disjoint.append(d)

    def supersets(self, a: int) -> int:
        """Positions of the maximum sets containing ``a``."""
        sup = self.all
        containing = self.containing
        while a and sup:
            low = a & -a
            sup &= containing[low.bit_length() - 1]
            a ^= low
        return sup

    def extend(self, sups: Sequence[int]) -> Optional[List[int]]:
        """Lexicographically first pairwise disjoint choice, one per entry of ``sups``."""
        chosen: List[int] = []
        disjoint = self.disjoint

        def rec(i: int, allowed: int) -> bool:
            if i == len(sups):
                return True
            cand = sups[i] & allowed
            while cand:
                low = cand & -cand
                j = low.bit_length() - 1
                cand ^= low
                chosen.append(j)
                if rec(i + 1, allowed & disjoint[j]):
                    return True
                chosen.pop()
            return False

        return list(chosen) if rec(0, self.all) else None


def _check_tuple(g: Graph, sets: Sequence[int]) -> None:
    used = 0
    for a in sets:
        if a & ~g.vertices:
            raise BadTuple(f"set {labels(a)} is not inside the vertex set")
        if a & used:
            raise BadTuple("sets in the tuple overlap")
        if not is_independent(g, a):
            raise BadTuple(f"set {labels(a)} is not independent")
        used |= a


def disjoint_extension(
    g: Graph, sets: Sequence[int], omega: Optional[Sequence[int]] = None
) -> Optional[Tuple[int, ...]]:
    """Pairwise disjoint maximum sets ``S_i`` with ``sets[i] <= S_i``, or None.

    Among all solutions the lexicographically first (by positions in Omega)
    is returned.
    """
    _check_tuple(g, sets)
    if omega is None:
        omega = maximum_independent_sets(g)
    index = OmegaIndex(g, omega)
    found = index.extend([index.supersets(a) for a in sets])
    if found is None:
        return None
    return tuple(index.omega[j] for j in found)


def is_wp(
    g: Graph,
    p: int,
    omega: Optional[Sequence[int]] = None,
    ind: Optional[Sequence[int]] = None,
    max_n: int = DEFAULT_MAX_N,
    max_omega: int = DEFAULT_MAX_OMEGA,
) -> WpWitness:
    """Definitional W_p membership test.

    ``omega`` and ``ind`` (all independent sets in enumeration order) may be
    passed in when already computed.  Raises :class:`CapExceeded` above
    ``max_n`` vertices or ``max_omega`` maximum independent sets.
    """
    if p < 1:
        raise ValueError("p must be at least 1")
    if g.n > max_n:
        raise CapExceeded(f"n={g.n} exceeds the definitional cap {max_n}")
    if ind is None:
        ind = list(independent_sets(g))
    if omega is None:
        alpha = max(a.bit_count() for a in ind)
        omega = [a for a in ind if a.bit_count() == alpha]
    if len(omega) > max_omega:
        raise CapExceeded(f"|Omega|={len(omega)} exceeds the cap {max_omega}")
    empty = (0,) * p
    if g.n < p:
        return WpWitness(p, False, failing_tuple=empty)
    index = OmegaIndex(g, omega)
    sups = [index.supersets(a) for a in ind]

    if p == 1:
        for a, sup in zip(ind, sups):
            if not sup:
                return WpWitness(1, False, failing_tuple=(a,))
        return WpWitness(1, True, extension=(index.omega[0],))

    if p == 2:
        disjoint = index.disjoint
        for a1, sup1 in zip(ind, sups):
            reach = 0
            for j in bits(sup1):
                reach |= disjoint[j]
            for a2, sup2 in zip(ind, sups):
                if not a1 & a2 and not sup2 & reach:
                    return WpWitness(2, False, failing_tuple=(a1, a2))
    else:
        failing = _first_failing_tuple(index, ind, sups, p)
        if failing is not None:
            return WpWitness(p, False, failing_tuple=failing)

    ext = index.extend([index.all] * p)
    assert ext is not None
    return WpWitness(p, True, extension=tuple(index.omega[j] for j in ext))


def _first_failing_tuple(
    index: OmegaIndex, ind: Sequence[int], sups: Sequence[int], p: int
) -> Optional[Tuple[int, ...]]:
    chosen: List[int] = []
    chosen_sups: List[int] = []
    last: List[Optional[List[int]]] = [None]

    def covered() -> bool:
        # A tuple inside the previous extension extends as well.
        prev = last[0]
        if prev is None:
            return False
        return all(not a & ~index.omega[j] for a, j in zip(chosen, prev))

    def rec(used: int) -> Optional[Tuple[int, ...]]:
        if len(chosen) == p:
            if covered():
                return None
            ext = index.extend(chosen_sups)
            if ext is None:
                return tuple(chosen)
            last[0] = ext
            return None
        for a, sup in zip(ind, sups):
            if a & used:
                continue
            chosen.append(a)
            chosen_sups.append(sup)
            hit = rec(used | a)
            chosen.pop()
            chosen_sups.pop()
            if hit is not None:
                return hit
        return None

    return rec(0)


def _maximal_set_size(g: Graph) -> Optional[int]:
    """Common size of all maximal independent sets, or None when sizes differ."""
    full = g.vertices
    co = [full & ~row & ~(1 << v) for v, row in enumerate(g.adj)]
    sizes: List[int] = []

    def bk(size: int, cand: int, excl: int) -> bool:
        if not cand:
            if not excl:
                if not sizes:
                    sizes.append(size)
                elif sizes[0] != size:
                    return False
            return True
        pool = cand | excl
        pivot, best = -1, -1
        for u in bits(pool):
            c = (cand & co[u]).bit_count()
            if c > best:
                pivot, best = u, c
        for v in bits(cand & ~co[pivot]):
            bit = 1 << v
            if not bk(size + 1, cand & co[v], excl & co[v]):
                return False
            cand &= ~bit
            excl |= bit
        return True

    if not bk(0, full, 0):
        return None
    return sizes[0] if sizes else 0


def is_well_covered(g: Graph) -> bool:
    """True iff all maximal independent sets share one size."""
    return _maximal_set_size(g) is not None


def is_one_well_covered(g: Graph) -> bool:
    """Well-covered, and every vertex-deleted subgraph well-covered with equal alpha."""
    if g.has_isolated_vertex():
        raise HasIsolatedVertex("1-well-covered test needs a graph without isolated vertices")
    alpha = _maximal_set_size(g)
    if alpha is None:
        return False
    for v in range(g.n):
        h, _ = g.remove_vertex(v)
        if _maximal_set_size(h) != alpha:
            return False
    return True


def avoidance_check(
    g: Graph, a: int, v: int, omega: Optional[Sequence[int]] = None
) -> Optional[int]:
    """First maximum independent set containing ``a`` and missing ``v``."""
    if not is_independent(g, a):
        raise NotIndependent(f"set {labels(a)} is not independent")
    if a >> v & 1:
        raise ValueError(f"vertex {v + 1} lies in the set")
    if omega is None:
        omega = maximum_independent_sets(g)
    alpha = omega[0].bit_count()
    if a.bit_count() >= alpha:
        raise AMaximum(f"set {labels(a)} is already maximum")
    for s in omega:
        if not a & ~s and not s >> v & 1:
            return s
    return None


@dataclass
class W2Audit:
    """Outcome of checking the standard W_2 facts on one graph."""

    facts: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, list] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.facts.values())

    def fail(self, fact: str, detail) -> None:
        self.facts[fact] = False
        self.witnesses.setdefault(fact, []).append(detail)


W2_FACTS = ("no_isolated", "localization", "components", "avoidance", "leafless")


def w2_structure_audit(
    g: Graph,
    omega: Optional[Sequence[int]] = None,
    ind: Optional[Sequence[int]] = None,
    max_n: int = DEFAULT_MAX_N,
) -> W2Audit:
    """Check the five standard facts on a graph already known to be in W_2.

    Failures are recorded with witnesses in 1-indexed labels; any failure
    contradicts the facts.
    """
    audit = W2Audit(facts={name: True for name in W2_FACTS})
    if omega is None:
        omega = maximum_independent_sets(g)
    if ind is None:
        ind = list(independent_sets(g))
    alpha = omega[0].bit_count() if omega else 0
    index = OmegaIndex(g, omega)

    for v, row in enumerate(g.adj):
        if not row:
            audit.fail("no_isolated", {"vertex": v + 1})

    local_cache: Dict[int, Tuple[bool, int]] = {}
    for a in ind:
        size = a.bit_count()
        if size >= alpha:
            continue
        h, index_map = localization(g, a)
        key = sum(1 << old for old in index_map)
        if key not in local_cache:
            in_w2 = h.n >= 2 and is_wp(h, 2, max_n=max_n).member
            local_cache[key] = (in_w2, independence_number(h))
        in_w2, local_alpha = local_cache[key]
        if not in_w2 or local_alpha != alpha - size:
            audit.fail("localization", {"set": labels(a), "in_w2": in_w2, "alpha": local_alpha})

        sup = index.supersets(a)
        common = g.vertices
        for j in bits(sup):
            common &= omega[j]
        forced = common & ~a if sup else g.vertices & ~a
        if forced:
            v = (forced & -forced).bit_length() - 1
            audit.fail("avoidance", {"set": labels(a), "vertex": v + 1})

    for comp in component_masks(g):
        h, index_map = g.induced(comp)
        if not is_wp(h, 2, max_n=max_n).member:
            audit.fail("components", {"component": [v + 1 for v in index_map]})
        if h.n == 2 and h.edge_count() == 1:
            continue
        for local_v, row in enumerate(h.adj):
            if row.bit_count() == 1:
                audit.fail("leafless", {"vertex": index_map[local_v] + 1})
    return audit
