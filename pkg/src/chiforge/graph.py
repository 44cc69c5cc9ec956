"""Immutable simple graphs on at most 64 vertices with bitset adjacency rows.

Vertex sets are passed around as integer bitmasks (bit ``v`` set iff vertex
``v`` is in the set).  Every public function that takes a vertex set also
accepts any iterable of vertex indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64


class CapacityError(ValueError):
    """Raised when a construction would exceed ``MAX_VERTICES`` vertices."""


class Graph6Error(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


def bits(mask: int) -> Iterator[int]:
    """Yield the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def to_mask(vertices) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph on {self.n} vertices exceeds capacity {MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency row count differs from n")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {u} references a vertex >= n")
            if row >> u & 1:
                raise ValueError(f"loop at vertex {u}")
            for v in bits(row):
                if not self.adj[v] >> u & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n > MAX_VERTICES:
            raise CapacityError(f"graph on {n} vertices exceeds capacity {MAX_VERTICES}")
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> int:
        return self.adj[u]

    def degree(self, u: int) -> int:
        return popcount(self.adj[u])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def num_edges(self) -> int:
        return sum(popcount(r) for r in self.adj) // 2

    def degree_sequence(self) -> list[int]:
        return sorted((self.degree(u) for u in range(self.n)), reverse=True)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


# --------------------------------------------------------------------------
# named graphs

def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << u) for u in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# --------------------------------------------------------------------------
# graph6

_HEADER = ">>graph6<<"


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def write_graph6(G: Graph) -> str:
    """Encode ``G`` as a graph6 line (without header or newline)."""
    out = [_encode_n(G.n)]
    acc = nbits = 0
    for j in range(1, G.n):
        row = G.adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line.  A leading ``>>graph6<<`` header is skipped."""
    s = text.strip("\r\n")
    base = 0
    if s.startswith(_HEADER):
        s = s[len(_HEADER):]
        base = len(_HEADER)
    if not s:
        raise Graph6Error("empty graph6 string", base)
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise Graph6Error(f"byte {ord(ch)} outside 63..126", base + k)
    if s[0] == "~":
        if len(s) > 1 and s[1] == "~":
            raise Graph6Error("8-byte length prefix exceeds vertex capacity", base + 1)
        if len(s) < 4:
            raise Graph6Error("truncated length prefix", base + len(s))
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        if n <= 62:
            raise Graph6Error("non-canonical 4-byte length prefix", base)
        pos = 4
    else:
        n = ord(s[0]) - 63
        pos = 1
    if n > MAX_VERTICES:
        raise Graph6Error(f"{n} vertices exceeds capacity {MAX_VERTICES}", base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[pos:]
    if len(body) != nbytes:
        raise Graph6Error(
            f"expected {nbytes} data bytes for n={n}, found {len(body)}",
            base + pos + min(len(body), nbytes),
        )
    rows = [0] * n
    k = 0
    for b, ch in enumerate(body):
        val = ord(ch) - 63
        for shift in range(5, -1, -1):
            bit = val >> shift & 1
            if k < nbits:
                if bit:
                    # k-th bit of the column-major upper triangle
                    j = _column_of(k)
                    i = k - j * (j - 1) // 2
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            elif bit:
                raise Graph6Error("nonzero padding bits", base + pos + b)
            k += 1
    return Graph(n, tuple(rows))


def _column_of(k: int) -> int:
    j = 1
    while j * (j + 1) // 2 <= k:
        j += 1
    return j


def read_graph6_lines(lines: Iterable[str]) -> Iterator[Graph]:
    for line in lines:
        line = line.strip()
        if not line or line == _HEADER:
            continue
        yield parse_graph6(line)


# --------------------------------------------------------------------------
# constructors

def complement(G: Graph) -> Graph:
    full = G.vertex_mask
    return Graph(G.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(G.adj)))


def induced(G: Graph, S) -> Graph:
    """``G[S]`` relabelled so that the vertices of ``S`` become ``0..|S|-1`` in ascending order."""
    m = to_mask(S)
    if m < 0 or m >> G.n:
        raise ValueError(f"vertex set {S!r} not contained in V(G) = 0..{G.n - 1}")
    order = list(bits(m))
    rows = []
    for u in order:
        row = G.adj[u]
        rows.append(sum(1 << i for i, v in enumerate(order) if row >> v & 1))
    return Graph(len(order), tuple(rows))


def delete_vertex(G: Graph, u: int) -> Graph:
    return induced(G, G.vertex_mask & ~(1 << u))


def disjoint_union(G1: Graph, G2: Graph) -> Graph:
    n = G1.n + G2.n
    if n > MAX_VERTICES:
        raise CapacityError(f"union has {n} vertices, capacity is {MAX_VERTICES}")
    return Graph(n, G1.adj + tuple(row << G1.n for row in G2.adj))


def copies(G: Graph, k: int) -> Graph:
    """``kG``: k vertex-disjoint copies of G."""
    out = empty_graph(0)
    for _ in range(k):
        out = disjoint_union(out, G)
    return out


def join(G1: Graph, G2: Graph) -> Graph:
    n = G1.n + G2.n
    if n > MAX_VERTICES:
        raise CapacityError(f"join has {n} vertices, capacity is {MAX_VERTICES}")
    left = G1.vertex_mask
    right = G2.vertex_mask << G1.n
    return Graph(n, tuple(r | right for r in G1.adj) + tuple(r << G1.n | left for r in G2.adj))


def check_weights(G: Graph, q: Sequence[int]) -> tuple[int, ...]:
    q = tuple(int(x) for x in q)
    if len(q) != G.n:
        raise ValueError(f"weight vector has length {len(q)}, graph has {G.n} vertices")
    if any(x < 0 for x in q):
        raise ValueError("vertex weights must be non-negative")
    return q


def support(q: Sequence[int]) -> int:
    """Mask of vertices with positive weight."""
    return sum(1 << u for u, x in enumerate(q) if x > 0)


def expansion(G: Graph, q: Sequence[int]) -> Graph:
    """The q-expansion: vertex u becomes a clique of q[u] vertices, laid out in
    ascending order of u; zero-weight vertices vanish."""
    q = check_weights(G, q)
    total = sum(q)
    if total > MAX_VERTICES:
        raise CapacityError(f"expansion has {total} vertices, capacity is {MAX_VERTICES}")
    blocks = expansion_blocks(q)
    rows = []
    for u in range(G.n):
        bag = blocks[u]
        cross = 0
        for v in bits(G.adj[u]):
            cross |= blocks[v]
        for w in bits(bag):
            rows.append((cross | bag) & ~(1 << w))
    return Graph(total, tuple(rows))


def expansion_blocks(q: Sequence[int]) -> list[int]:
    """Vertex masks of the bags of ``expansion(G, q)``, one per original vertex."""
    out, start = [], 0
    for x in q:
        out.append(((1 << x) - 1) << start)
        start += x
    return out


# --------------------------------------------------------------------------
# queries

def neighborhood(G: Graph, S) -> int:
    """N_G(S): vertices outside S with a neighbour in S."""
    m = to_mask(S)
    out = 0
    for u in bits(m):
        out |= G.adj[u]
    return out & ~m


def neighborhood_i(G: Graph, S, i: int) -> int:
    """Vertices at distance exactly ``i`` from the set ``S``."""
    m = to_mask(S)
    if not m:
        raise ValueError("S must be non-empty")
    if i < 0:
        raise ValueError("i must be non-negative")
    seen = shell = m
    for _ in range(i):
        shell = neighborhood(G, shell) & ~seen
        if not shell:
            return 0
        seen |= shell
    return shell


def component_of(G: Graph, u: int, within: int | None = None) -> int:
    allowed = G.vertex_mask if within is None else within
    seen = frontier = 1 << u
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= G.adj[v]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def components(G: Graph, within: int | None = None) -> list[int]:
    """Vertex masks of the connected components of ``G[within]``."""
    rest = G.vertex_mask if within is None else within
    out = []
    while rest:
        u = (rest & -rest).bit_length() - 1
        c = component_of(G, u, rest)
        out.append(c)
        rest &= ~c
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or component_of(G, 0) == G.vertex_mask


@dataclass(frozen=True)
class EdgeCut:
    """A pair of disjoint vertex sets, for the complete/anti-complete predicates on E_G[A, B]."""

    A: int
    B: int

    def __post_init__(self):
        if self.A & self.B:
            raise ValueError("EdgeCut sides must be disjoint")


def is_complete_between(G: Graph, cut: EdgeCut) -> bool:
    return all(G.adj[a] & cut.B == cut.B for a in bits(cut.A))


def is_anticomplete_between(G: Graph, cut: EdgeCut) -> bool:
    return all(not G.adj[a] & cut.B for a in bits(cut.A))


def is_clique(G: Graph, S) -> bool:
    m = to_mask(S)
    return all((G.adj[u] | 1 << u) & m == m for u in bits(m))


def is_independent(G: Graph, S) -> bool:
    m = to_mask(S)
    return all(not G.adj[u] & m for u in bits(m))


def is_complete(G: Graph) -> bool:
    return G.num_edges == G.n * (G.n - 1) // 2


def max_degree(G: Graph) -> int:
    return max((G.degree(u) for u in range(G.n)), default=0)
