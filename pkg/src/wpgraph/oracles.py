"""Brute-force reference computations and random instance generators.

These deliberately avoid the recursive machinery in :mod:`wpgraph.enumeration`
so they can serve as independent checks for it.
"""

from __future__ import annotations

import random
from typing import List, Optional

from .graph import Graph


def subset_polynomial(g: Graph) -> List[int]:
    """Independent-set counts by size, scanning all 2^n vertex subsets."""
    n, adj = g.n, g.adj
    size = 1 << n
    indep = bytearray(size)
    indep[0] = 1
    counts = [0] * (n + 1)
    counts[0] = 1
    for m in range(1, size):
        low = m & -m
        v = low.bit_length() - 1
        rest = m ^ low
        if indep[rest] and not adj[v] & rest:
            indep[m] = 1
            counts[m.bit_count()] += 1
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    return counts


def subset_maximal_sizes(g: Graph) -> set:
    """Sizes of all maximal independent sets, by subset scan."""
    n, adj = g.n, g.adj
    full = (1 << n) - 1
    sizes = set()
    for m in range(1 << n):
        nb = 0
        ok = True
        for v in range(n):
            if m >> v & 1:
                if adj[v] & m:
                    ok = False
                    break
                nb |= adj[v]
        if ok and (m | nb) == full:
            sizes.add(m.bit_count())
    return sizes


def random_graph(rng: random.Random, n: int, density: Optional[float] = None) -> Graph:
    if density is None:
        density = rng.random()
    edges = [(i, j) for j in range(n) for i in range(j) if rng.random() < density]
    return Graph.from_edges(n, edges)


def random_log_concave(rng: random.Random, length: int, top: int = 10**6) -> List[int]:
    """Positive log-concave sequence: each term bounded by the previous ratio."""
    seq = [rng.randint(1, top)]
    if length > 1:
        seq.append(rng.randint(1, top))
    while len(seq) < length:
        bound = min(top, seq[-1] * seq[-1] // seq[-2])
        if bound < 1:
            break
        seq.append(rng.randint(1, bound))
    return seq


def random_unimodal(rng: random.Random, length: int, top: int = 10**6) -> List[int]:
    """Positive sequence rising to a random peak and falling afterwards."""
    vals = [rng.randint(1, top) for _ in range(length)]
    peak = rng.randrange(length)
    return sorted(vals[:peak]) + [max(vals)] + sorted(vals[peak + 1:], reverse=True)
