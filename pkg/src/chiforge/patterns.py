"""Induced-subgraph detection, the named pattern zoo, odd holes and perfection."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .graph import (
    Graph,
    bits,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    popcount,
)


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: Graph


def _g(n, edges):
    return Graph.from_edges(n, edges)


# Edge lists are fixed here; test_patterns pins vertex/edge counts and degree sequences.
_ZOO_GRAPHS = {
    "3K1": empty_graph(3),
    "2K2": _g(4, [(0, 1), (2, 3)]),
    "C4": cycle_graph(4),
    # triangle 1-2-3 with pendant 0 on 1
    "paw": _g(4, [(0, 1), (1, 2), (2, 3), (1, 3)]),
    # square 1-2-3-4 with pendant 0 on 1
    "banner": _g(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1)]),
    # triangle 2-3-4 with path 0-1-2 attached
    "cobanner": _g(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)]),
    # triangle 2-3-4 with pendants 0 on 3 and 1 on 4
    "bull": _g(5, [(2, 3), (3, 4), (2, 4), (0, 3), (1, 4)]),
    "C5": cycle_graph(5),
    # path 0-1-2-3 plus 4 adjacent to all of it
    "gem": _g(5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
    "P5": path_graph(5),
    # K_{2,3} (sides {0,1} and {2,3,4}) plus the edge 3-4
    "paraglider": _g(5, [(a, b) for a in (0, 1) for b in (2, 3, 4)] + [(3, 4)]),
    # hub 0 joined to the cycle 1-2-3-4-5
    "W5": _g(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)]),
    "P4": path_graph(4),
}

ZOO = {name: Pattern(name, g) for name, g in _ZOO_GRAPHS.items()}

_ALIASES = {"co-banner": "cobanner", "3k1": "3K1", "2k2": "2K2"}
_KNM = re.compile(r"^K_?\{?(\d+),(\d+)\}?$")


def pattern(name: str) -> Pattern:
    """Look up a zoo pattern by its CLI name; ``K{n,m}`` / ``Kn,m`` builds a complete bipartite graph."""
    key = _ALIASES.get(name, name)
    if key in ZOO:
        return ZOO[key]
    m = _KNM.match(name)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return Pattern(f"K{a},{b}", complete_bipartite(a, b))
    if re.fullmatch(r"K\d+", name):
        return Pattern(name, complete_graph(int(name[1:])))
    raise KeyError(f"unknown pattern {name!r}")


# --------------------------------------------------------------------------
# matching

def _match_order(H: Graph) -> list[int]:
    # connected-first, high-degree-first: each new vertex is constrained by as many earlier ones as possible
    order: list[int] = []
    placed = 0
    remaining = set(range(H.n))
    while remaining:
        linked = [v for v in remaining if H.adj[v] & placed]
        pool = linked or list(remaining)
        v = max(pool, key=lambda x: (popcount(H.adj[x] & placed), H.degree(x), -x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _embeddings(G: Graph, H: Graph):
    if H.n > G.n:
        return
    order = _match_order(H)
    hdeg = [H.degree(v) for v in range(H.n)]
    gdeg = [G.degree(v) for v in range(G.n)]
    by_min_degree = [sum(1 << u for u in range(G.n) if gdeg[u] >= d) for d in range(H.n + 1)]
    image = [0] * H.n

    def extend(depth: int, used: int):
        if depth == H.n:
            yield list(image)
            return
        h = order[depth]
        cand = by_min_degree[hdeg[h]] & ~used
        for prev in order[:depth]:
            g = image[prev]
            if H.adj[h] >> prev & 1:
                cand &= G.adj[g]
            else:
                cand &= ~G.adj[g]
            if not cand:
                return
        for g in bits(cand):
            image[h] = g
            yield from extend(depth + 1, used | 1 << g)

    yield from extend(0, 0)


def find_embedding(G: Graph, H: Graph) -> Optional[list[int]]:
    """An injective map ``V(H) -> V(G)`` preserving adjacency and non-adjacency, or None."""
    return next(_embeddings(G, H), None)


def find_induced(G: Graph, H) -> Optional[list[int]]:
    """Witness vertex list (sorted) of an induced copy of ``H`` in ``G``, or None."""
    Hg = H.graph if isinstance(H, Pattern) else H
    emb = find_embedding(G, Hg)
    return None if emb is None else sorted(emb)


def is_free(G: Graph, H) -> bool:
    return find_induced(G, H) is None


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.num_edges != H.num_edges or G.degree_sequence() != H.degree_sequence():
        return False
    return find_embedding(G, H) is not None


def isomorphism(G: Graph, H: Graph) -> Optional[list[int]]:
    """A bijection ``f`` with ``uv in E(H)`` iff ``f[u]f[v] in E(G)``, or None."""
    if G.n != H.n or G.num_edges != H.num_edges or G.degree_sequence() != H.degree_sequence():
        return None
    return find_embedding(G, H)


def build_qf(F: Graph) -> Graph:
    """The path u1 u2 u3 u4 with u3 replaced by a copy of F.

    Layout: u1 = 0, u2 = 1, the copy of F on 2 .. |F|+1, u4 = |F|+2.
    """
    if F.n == 0:
        raise ValueError("F must be non-empty")
    k = F.n
    u4 = k + 2
    edges = [(0, 1)]
    edges += [(u + 2, v + 2) for u, v in F.edges()]
    for f in range(2, k + 2):
        edges += [(1, f), (f, u4)]
    return Graph.from_edges(k + 3, edges)


QP4 = build_qf(path_graph(4))


# --------------------------------------------------------------------------
# odd holes and perfection

def find_induced_cycle(G: Graph, lengths) -> Optional[list[int]]:
    """An induced cycle whose length lies in ``lengths`` (vertex list in cycle order), or None.

    Depth-first over induced paths whose first vertex is the cycle's minimum.
    """
    wanted = set(lengths)
    if not wanted:
        return None
    longest = max(wanted)
    for s in range(G.n):
        higher = G.vertex_mask & ~((1 << (s + 1)) - 1)
        found = _grow(G, [s], higher, wanted, longest)
        if found:
            return found
    return None


def _grow(G, path, allowed, wanted, longest):
    s, last = path[0], path[-1]
    blocked = 0
    for p in path[1:-1]:
        blocked |= G.adj[p] | 1 << p
    for v in bits(G.adj[last] & allowed & ~blocked):
        if len(path) >= 2 and G.adj[v] >> s & 1:
            if len(path) + 1 in wanted:
                return path + [v]
            continue
        if len(path) + 1 < longest:
            found = _grow(G, path + [v], allowed, wanted, longest)
            if found:
                return found
    return None


def has_odd_hole(G: Graph) -> Optional[list[int]]:
    """An induced odd cycle of length at least 5, or None."""
    return find_induced_cycle(G, range(5, G.n + 1, 2))


def is_perfect(G: Graph) -> bool:
    return has_odd_hole(G) is None and has_odd_hole(complement(G)) is None


# --------------------------------------------------------------------------
# hereditary classes

@dataclass(frozen=True)
class GraphClass:
    name: str
    forbidden: tuple[str, ...]
    odd_holes: bool = False

    def violation(self, G: Graph):
        """First forbidden witness as ``(pattern name, vertices)``, or None."""
        for p in self.forbidden:
            w = find_induced(G, _forbidden_graph(p))
            if w is not None:
                return p, w
        if self.odd_holes:
            w = has_odd_hole(G)
            if w is not None:
                return "odd-hole", w
        return None

    def __contains__(self, G: Graph) -> bool:
        return self.violation(G) is None


def _forbidden_graph(name: str) -> Graph:
    if name == "QP4":
        return QP4
    return pattern(name).graph


CLASSES = {
    "P5-banner": GraphClass("P5-banner", ("P5", "banner")),
    "P5-cobanner": GraphClass("P5-cobanner", ("P5", "cobanner")),
    "oddhole-banner": GraphClass("oddhole-banner", ("banner",), odd_holes=True),
    "P5-C4": GraphClass("P5-C4", ("P5", "C4")),
    "3K1": GraphClass("3K1", ("3K1",)),
    "2K2": GraphClass("2K2", ("2K2",)),
    "C5-3K1": GraphClass("C5-3K1", ("C5", "3K1")),
    "QP4": GraphClass("QP4", ("QP4",)),
}

_CLASS_ALIASES = {
    "P5,banner": "P5-banner",
    "P5,cobanner": "P5-cobanner",
    "P5,co-banner": "P5-cobanner",
    "C5,C7,...,banner": "oddhole-banner",
    "P5,C4": "P5-C4",
    "C5,3K1": "C5-3K1",
}


def graph_class(name: str) -> GraphClass:
    key = _CLASS_ALIASES.get(name, name)
    try:
        return CLASSES[key]
    except KeyError:
        raise KeyError(f"unknown graph class {name!r}; known: {', '.join(CLASSES)}") from None


def is_class_member(G: Graph, cls) -> bool:
    c = cls if isinstance(cls, GraphClass) else graph_class(cls)
    return G in c


def has_complete_bipartite_spanning_subgraph(H: Graph) -> bool:
    """True if V(H) splits into non-empty A, B with every A-B pair adjacent."""
    full = H.vertex_mask
    # fix vertex 0 in A to visit each bipartition once
    for A in range(1, 1 << H.n, 2):
        B = full & ~A
        if B and all(H.adj[a] & B == B for a in bits(A)):
            return True
    return False
