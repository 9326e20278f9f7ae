"""Simple graphs on at most 62 vertices with bitmask adjacency.

Vertex sets are plain ``int`` bitmasks: bit ``v`` is set when vertex ``v``
belongs to the set.  Vertices are 0-indexed internally; report code converts
to 1-indexed labels with :func:`labels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Tuple, Union

MAX_ORDER = 62

IndexMap = Tuple[int, ...]


class GraphError(ValueError):
    pass


class OrderTooLarge(GraphError):
    pass


class NotIndependent(GraphError):
    pass


class Graph6Error(GraphError):
    pass


class ByteOutOfRange(Graph6Error):
    pass


class LengthMismatch(Graph6Error):
    pass


class NonzeroPadding(Graph6Error):
    pass


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def labels(mask: int) -> list[int]:
    """Sorted 1-indexed vertex labels of a set, as used in reports."""
    return [v + 1 for v in bits(mask)]


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph; ``adj[v]`` is the neighbourhood bitmask of ``v``."""

    n: int
    adj: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.n <= MAX_ORDER:
            raise OrderTooLarge(f"order {self.n} outside 0..{MAX_ORDER}")
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count differs from n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {u} has bits above n-1")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise GraphError(f"asymmetric edge {u}-{v}")

    @classmethod
    def _trusted(cls, n: int, adj: Tuple[int, ...]) -> "Graph":
        # Skips validation; callers guarantee the invariants.
        g = object.__new__(cls)
        object.__setattr__(g, "n", n)
        object.__setattr__(g, "adj", adj)
        return g

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        if not 0 <= n <= MAX_ORDER:
            raise OrderTooLarge(f"order {n} outside 0..{MAX_ORDER}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls._trusted(n, tuple(rows))

    @property
    def vertices(self) -> int:
        """Mask of all vertices."""
        return (1 << self.n) - 1

    def edges(self) -> list[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def has_isolated_vertex(self) -> bool:
        return any(row == 0 for row in self.adj)

    def induced(self, keep: int) -> Tuple["Graph", IndexMap]:
        """Induced subgraph on the vertex mask ``keep``, plus new->old index map."""
        index_map = tuple(bits(keep))
        position = {old: new for new, old in enumerate(index_map)}
        rows = []
        for old in index_map:
            row = 0
            for w in bits(self.adj[old] & keep):
                row |= 1 << position[w]
            rows.append(row)
        return Graph._trusted(len(index_map), tuple(rows)), index_map

    def remove_vertex(self, v: int) -> Tuple["Graph", IndexMap]:
        return self.induced(self.vertices & ~(1 << v))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def open_neighborhood(g: Graph, a: int) -> int:
    """Vertices outside ``a`` adjacent to some member of ``a``."""
    nb = 0
    for u in bits(a):
        nb |= g.adj[u]
    return nb & ~a


def closed_neighborhood(g: Graph, a: int) -> int:
    return open_neighborhood(g, a) | a


def localization(g: Graph, a: int) -> Tuple[Graph, IndexMap]:
    """Delete the closed neighbourhood of the independent set ``a``.

    Returns the remaining induced subgraph and the map from its vertex
    indices back to vertices of ``g``.
    """
    for u in bits(a):
        if g.adj[u] & a:
            raise NotIndependent(f"set {labels(a)} contains an edge at vertex {u + 1}")
    return g.induced(g.vertices & ~closed_neighborhood(g, a))


def _reach(g: Graph, start: int, within: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= g.adj[u]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return _reach(g, 0, g.vertices) == g.vertices


def component_masks(g: Graph) -> list[int]:
    """Vertex masks of the connected components, ordered by smallest vertex."""
    rest = g.vertices
    out = []
    while rest:
        low = (rest & -rest).bit_length() - 1
        comp = _reach(g, low, rest)
        out.append(comp)
        rest &= ~comp
    return out


def connected_components(g: Graph) -> list[Tuple[Graph, IndexMap]]:
    return [g.induced(m) for m in component_masks(g)]


# graph6 short form -----------------------------------------------------------


def _edge_bit_count(n: int) -> int:
    return n * (n - 1) // 2


def parse_graph6(text: Union[str, bytes]) -> Graph:
    """Decode a graph6 short-form record (optional ``>>graph6<<`` header)."""
    data = text.encode("ascii", "replace") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise LengthMismatch("empty record")
    for i, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise ByteOutOfRange(f"byte {byte} at offset {i} outside 63..126")
    n = data[0] - 63
    if n > MAX_ORDER:
        raise OrderTooLarge("graph6 long form (n > 62) is not supported")
    nbits = _edge_bit_count(n)
    nbytes = -(-nbits // 6)
    body = data[1:]
    if len(body) != nbytes:
        raise LengthMismatch(f"n={n} needs {nbytes} edge bytes, got {len(body)}")
    value = 0
    for byte in body:
        value = (value << 6) | (byte - 63)
    pad = nbytes * 6 - nbits
    if value & ((1 << pad) - 1):
        raise NonzeroPadding("padding bits are not zero")
    value >>= pad
    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return Graph._trusted(n, tuple(rows))


def encode_graph6(g: Graph) -> str:
    """Encode ``g`` in graph6 short form (ASCII text, no trailing newline)."""
    n = g.n
    if n > MAX_ORDER:
        raise OrderTooLarge("graph6 long form (n > 62) is not supported")
    value = 0
    for j in range(1, n):
        col = g.adj[j]
        for i in range(j):
            value = (value << 1) | (col >> i & 1)
    nbits = _edge_bit_count(n)
    nbytes = -(-nbits // 6)
    value <<= nbytes * 6 - nbits
    out = [chr(63 + n)]
    for k in range(nbytes - 1, -1, -1):
        out.append(chr(63 + (value >> (6 * k) & 63)))
    return "".join(out)


def graph_from_rows(rows: Sequence[int]) -> Graph:
    return Graph(len(rows), tuple(rows))
