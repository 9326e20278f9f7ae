"""Independent sets: enumeration, independence number, maximum sets, polynomial.

Enumeration order is lexicographic on the sorted vertex lists, with a set
preceding its extensions (``{}``, ``{0}``, ``{0, 2}``, ..., ``{1}``, ...).
With a size filter this coincides with :func:`itertools.combinations` order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, Optional, Sequence, Tuple

from .graph import Graph, bits

DEFAULT_MEMO_LIMIT = 1 << 20


@dataclass(frozen=True)
class IndependencePolynomial:
    """Coefficients ``s_0..s_alpha``; ``s_k`` counts independent ``k``-sets."""

    coeffs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("an independence polynomial starts with s_0 = 1")
        if any(c < 1 for c in self.coeffs):
            raise ValueError("coefficients must be positive up to the degree")

    @property
    def alpha(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __mul__(self, other: "IndependencePolynomial") -> "IndependencePolynomial":
        return IndependencePolynomial(tuple(convolve(self.coeffs, other.coeffs)))

    def __call__(self, x):
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    def total(self) -> int:
        """Number of independent sets, the value at ``x = 1``."""
        return sum(self.coeffs)


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def is_independent(g: Graph, a: int) -> bool:
    adj = g.adj
    for u in bits(a):
        if adj[u] & a:
            return False
    return True


def independent_sets(g: Graph, size: Optional[int] = None) -> Iterator[int]:
    """Yield every independent set once, in lexicographic order.

    With ``size`` only sets of exactly that cardinality are produced.
    """
    if size is not None and not 0 <= size <= g.n:
        return
    adj = g.adj
    stack = [(0, g.vertices, 0)]
    while stack:
        s, cand, k = stack.pop()
        if size is None:
            yield s
        elif k == size:
            yield s
            continue
        elif k + cand.bit_count() < size:
            continue
        children = []
        c = cand
        while c:
            low = c & -c
            v = low.bit_length() - 1
            c ^= low
            # later candidates only, so each set is produced from its sorted prefix
            children.append((s | low, c & ~adj[v], k + 1))
        stack.extend(reversed(children))


def _pivot(adj: Sequence[int], residual: int) -> Tuple[int, int]:
    best_v, best_d = -1, -1
    for v in bits(residual):
        d = (adj[v] & residual).bit_count()
        if d > best_d:
            best_v, best_d = v, d
    return best_v, best_d


def independence_number(g: Graph) -> int:
    """Size of a largest independent set, by branch and bound on bitmasks."""
    adj = g.adj
    best = 0

    def search(residual: int, size: int) -> None:
        nonlocal best
        while residual:
            if size + residual.bit_count() <= best:
                return
            v, d = _pivot(adj, residual)
            if d == 0:
                size += residual.bit_count()
                break
            bit = 1 << v
            search(residual & ~adj[v] & ~bit, size + 1)
            residual &= ~bit
        if size > best:
            best = size

    search(g.vertices, 0)
    return best


def independence_polynomial(g: Graph, memo_limit: int = DEFAULT_MEMO_LIMIT) -> IndependencePolynomial:
    """Exact polynomial by I(G) = I(G - v) + x I(G - N[v]).

    Results for residual vertex sets are memoised until ``memo_limit``
    entries are stored; beyond that the recursion runs unmemoised.
    """
    adj = g.adj
    memo: dict[int, list[int]] = {}

    def poly(residual: int) -> list[int]:
        hit = memo.get(residual)
        if hit is not None:
            return hit
        v, d = _pivot(adj, residual)
        if d <= 0:
            m = residual.bit_count()
            out = [comb(m, k) for k in range(m + 1)]
        else:
            bit = 1 << v
            without = poly(residual & ~bit)
            inside = poly(residual & ~adj[v] & ~bit)
            out = list(without)
            for k, c in enumerate(inside, start=1):
                if k < len(out):
                    out[k] += c
                else:
                    out.append(c)
        if len(memo) < memo_limit:
            memo[residual] = out
        return out

    return IndependencePolynomial(tuple(poly(g.vertices)))


def maximum_independent_sets(g: Graph, alpha: Optional[int] = None) -> list[int]:
    """All maximum independent sets (the family Omega) in lexicographic order."""
    if alpha is None:
        alpha = independence_number(g)
    return list(independent_sets(g, alpha))


enumerate_independent_sets = independent_sets
