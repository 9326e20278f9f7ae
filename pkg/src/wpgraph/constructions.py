"""Named graph families, coronas and disjoint unions.

Text forms: ``C5`` (cycle), ``P4`` (path), ``K3`` (complete), ``K2,3``
(complete bipartite), ``E4`` (edgeless).  ``G*H`` is the corona of G by H and
``G+H`` the disjoint union; ``*`` binds tighter than ``+``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence, Tuple

from .graph import MAX_ORDER, Graph, OrderTooLarge

KINDS = ("cycle", "path", "complete", "complete_bipartite", "empty")
_LETTER = {"C": "cycle", "P": "path", "K": "complete", "E": "empty"}
_FAMILY_RE = re.compile(r"^([CPKE])(\d+)(?:,(\d+))?$")
EXPR_RE = re.compile(r"^[CPKE]\d+(?:,\d+)?(?:[*+][CPKE]\d+(?:,\d+)?)*$")


class BadSpec(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise BadSpec(f"unknown family {self.kind!r}")
        want = 2 if self.kind == "complete_bipartite" else 1
        if len(self.params) != want:
            raise BadSpec(f"{self.kind} takes {want} size parameter(s)")
        if any(x < 1 for x in self.params):
            raise BadSpec("sizes must be at least 1")
        if self.kind == "cycle" and self.params[0] < 3:
            raise BadSpec("a cycle needs at least 3 vertices")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        m = _FAMILY_RE.match(text.strip())
        if not m:
            raise BadSpec(f"cannot parse family spec {text!r}")
        letter, a, b = m.groups()
        if b is not None:
            if letter != "K":
                raise BadSpec(f"only K takes two sizes: {text!r}")
            return cls("complete_bipartite", (int(a), int(b)))
        return cls(_LETTER[letter], (int(a),))

    def __str__(self) -> str:
        if self.kind == "complete_bipartite":
            return "K{},{}".format(*self.params)
        letter = {v: k for k, v in _LETTER.items()}[self.kind]
        return f"{letter}{self.params[0]}"


def make_family(spec: FamilySpec) -> Graph:
    kind, params = spec.kind, spec.params
    n = sum(params)
    if n > MAX_ORDER:
        raise OrderTooLarge(f"{spec} has {n} vertices")
    if kind == "cycle":
        edges = [(i, (i + 1) % n) for i in range(n)]
    elif kind == "path":
        edges = [(i, i + 1) for i in range(n - 1)]
    elif kind == "complete":
        edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    elif kind == "complete_bipartite":
        a = params[0]
        edges = [(i, j) for i in range(a) for j in range(a, n)]
    else:
        edges = []
    return Graph.from_edges(n, edges)


def cycle(n: int) -> Graph:
    return make_family(FamilySpec("cycle", (n,)))


def path(n: int) -> Graph:
    return make_family(FamilySpec("path", (n,)))


def complete(n: int) -> Graph:
    return make_family(FamilySpec("complete", (n,)))


def complete_bipartite(a: int, b: int) -> Graph:
    return make_family(FamilySpec("complete_bipartite", (a, b)))


def empty(n: int) -> Graph:
    return make_family(FamilySpec("empty", (n,)))


def corona(g: Graph, h: Graph) -> Graph:
    """G plus one copy of H per vertex of G, vertex i joined to all of copy i.

    Numbering: G keeps 0..n(G)-1; copy i occupies
    n(G) + i*n(H) .. n(G) + (i+1)*n(H) - 1 in H's own order.
    """
    total = g.n * (1 + h.n)
    if total > MAX_ORDER:
        raise OrderTooLarge(f"corona would have {total} vertices")
    edges = list(g.edges())
    for i in range(g.n):
        base = g.n + i * h.n
        edges.extend((base + u, base + v) for u, v in h.edges())
        edges.extend((i, base + u) for u in range(h.n))
    return Graph.from_edges(total, edges)


def disjoint_union(gs: Sequence[Graph]) -> Graph:
    total = sum(g.n for g in gs)
    if total > MAX_ORDER:
        raise OrderTooLarge(f"union would have {total} vertices")
    rows = []
    offset = 0
    for g in gs:
        rows.extend(row << offset for row in g.adj)
        offset += g.n
    return Graph._trusted(total, tuple(rows))


def looks_like_expression(text: str) -> bool:
    return bool(EXPR_RE.match(text.strip()))


def parse_expression(text: str) -> Graph:
    """Build a graph from a family expression such as ``K2*K1+C5``."""
    text = text.strip()
    if not looks_like_expression(text):
        raise BadSpec(f"cannot parse graph expression {text!r}")
    parts = []
    for term in text.split("+"):
        factors = [make_family(FamilySpec.parse(f)) for f in term.split("*")]
        g = factors[0]
        for h in factors[1:]:
            g = corona(g, h)
        parts.append(g)
    return parts[0] if len(parts) == 1 else disjoint_union(parts)
