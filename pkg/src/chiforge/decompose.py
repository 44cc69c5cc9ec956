"""Modules, clique-separators of modules, and the weighted decomposition of
Q{P4}-free graphs into completely joined parts with prime quotients."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .coloring import BudgetExceeded, weighted_chi
from .graph import (
    Graph,
    bits,
    check_weights,
    complement,
    components,
    induced,
    is_clique,
    is_connected,
    neighborhood,
    neighborhood_i,
    popcount,
    support,
    to_mask,
    write_graph6,
)
from .patterns import QP4, build_qf, find_induced

MODULE_ENUM_LIMIT = 16


class DecompositionError(RuntimeError):
    """A structural guarantee of the decomposition failed to hold."""


class OverlappingHomogeneousSets(DecompositionError):
    def __init__(self, sets):
        super().__init__(f"maximal homogeneous sets overlap: {[sorted(bits(s)) for s in sets]}")
        self.sets = sets


class PreconditionError(ValueError):
    """Input is not Q{F}-free; ``witness`` lists the vertices of an induced Q{F}."""

    def __init__(self, message, witness):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


@dataclass(frozen=True)
class ModuleSet:
    vertices: int
    n: int

    def __post_init__(self):
        if not 1 <= popcount(self.vertices) <= self.n:
            raise ValueError("a module has between 1 and n vertices")

    @property
    def size(self) -> int:
        return popcount(self.vertices)

    @property
    def homogeneous(self) -> bool:
        return 1 < self.size < self.n

    def members(self) -> list[int]:
        return list(bits(self.vertices))


def is_module(G: Graph, M) -> bool:
    m = to_mask(M)
    if not m:
        return False
    for v in bits(G.vertex_mask & ~m):
        seen = G.adj[v] & m
        if seen and seen != m:
            return False
    return True


def module_closure(G: Graph, S) -> int:
    """The smallest module containing ``S``."""
    m = to_mask(S)
    changed = True
    while changed:
        changed = False
        for v in bits(G.vertex_mask & ~m):
            seen = G.adj[v] & m
            if seen and seen != m:
                m |= 1 << v
                changed = True
    return m


def modules(G: Graph) -> Iterator[int]:
    """Every module of G, by exhaustive subset check."""
    if G.n > MODULE_ENUM_LIMIT:
        raise BudgetExceeded(f"module enumeration limited to {MODULE_ENUM_LIMIT} vertices")
    for m in range(1, 1 << G.n):
        if is_module(G, m):
            yield m


def homogeneous_sets(G: Graph) -> list[int]:
    return [m for m in modules(G) if 1 < popcount(m) < G.n]


def maximal_homogeneous_sets(G: Graph) -> list[ModuleSet]:
    """Inclusion-maximal homogeneous sets of a connected graph (possibly overlapping)."""
    if not is_connected(G):
        raise ValueError("maximal_homogeneous_sets needs a connected graph; split into components first")
    hs = homogeneous_sets(G)
    maximal = [m for m in hs if not any(o != m and o & m == m for o in hs)]
    return [ModuleSet(m, G.n) for m in maximal]


def is_prime(G: Graph) -> bool:
    full = G.vertex_mask
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if module_closure(G, (1 << u) | (1 << v)) != full:
                return False
    return True


# --------------------------------------------------------------------------
# clique-separators of modules

@dataclass(frozen=True)
class CliqueSeparatorOfModules:
    parts: tuple[int, ...]
    side1: int
    side2: int

    @property
    def X(self) -> int:
        return self.side1 & self.side2

    def check(self, G: Graph) -> None:
        """Raise ``ValueError`` unless every defining condition holds in G."""
        X = 0
        for p in self.parts:
            if not p or p & X:
                raise ValueError("parts must be non-empty and disjoint")
            if not is_module(G, p):
                raise ValueError(f"part {sorted(bits(p))} is not a module")
            X |= p
        for i, a in enumerate(self.parts):
            for b in self.parts[i + 1:]:
                if any(G.adj[u] & b != b for u in bits(a)):
                    raise ValueError("parts are not pairwise complete")
        if self.side1 | self.side2 != G.vertex_mask or self.X != X:
            raise ValueError("sides must cover V(G) and meet exactly in X")
        only1, only2 = self.side1 & ~X, self.side2 & ~X
        if not only1 or not only2:
            raise ValueError("both strict sides must be non-empty")
        if any(G.adj[u] & only2 for u in bits(only1)):
            raise ValueError("edge between the strict sides")

    def to_json(self) -> dict:
        return {
            "X": sorted(bits(self.X)),
            "parts": [sorted(bits(p)) for p in self.parts],
            "side1": sorted(bits(self.side1)),
            "side2": sorted(bits(self.side2)),
        }


def module_partition(G: Graph, X: int) -> Optional[tuple[int, ...]]:
    """The finest partition of X into pairwise complete modules of G, or None.

    Blocks must be unions of co-components of G[X]; a block split by a vertex
    of X absorbs that vertex's block, and a split by a vertex outside X is fatal.
    """
    blocks = components(complement(G), X)
    changed = True
    while changed:
        changed = False
        for i, B in enumerate(blocks):
            for w in bits(G.vertex_mask & ~B):
                seen = G.adj[w] & B
                if seen and seen != B:
                    if not X >> w & 1:
                        return None
                    j = next(k for k, C in enumerate(blocks) if C >> w & 1)
                    blocks[i] |= blocks[j]
                    del blocks[j]
                    changed = True
                    break
            if changed:
                break
    return tuple(sorted(blocks))


def separator_with_sides(G: Graph, X: int) -> Optional[CliqueSeparatorOfModules]:
    parts = module_partition(G, X)
    if parts is None:
        return None
    comps = components(G, G.vertex_mask & ~X)
    if len(comps) < 2:
        return None
    first = comps[0]
    return CliqueSeparatorOfModules(parts, X | first, G.vertex_mask & ~first)


def find_clique_separator_of_modules(G: Graph) -> Optional[CliqueSeparatorOfModules]:
    """A clique-separator of modules, preferring plain cliques, then smaller |X|."""
    if G.n > MODULE_ENUM_LIMIT:
        raise BudgetExceeded(f"separator search limited to {MODULE_ENUM_LIMIT} vertices")
    full = G.vertex_mask
    by_size: list[list[int]] = [[] for _ in range(G.n + 1)]
    for X in range(1, full):
        if len(components(G, full & ~X)) >= 2:
            by_size[popcount(X)].append(X)
    for want_clique in (True, False):
        for group in by_size:
            for X in group:
                if is_clique(G, X) == want_clique:
                    sep = separator_with_sides(G, X)
                    if sep is not None:
                        return sep
    return None


# --------------------------------------------------------------------------
# weight minimalization and the Q{P4}-free decomposition

def minimalize_weights(G: Graph, q: Sequence[int]) -> tuple[int, ...]:
    """Greedy single-unit decrements in ascending vertex order while chi_q is unchanged.

    One pass suffices: if dropping u lowered chi_q once, it still does after
    further decrements elsewhere, by monotonicity.
    """
    q = list(check_weights(G, q))
    target = weighted_chi(G, q)
    for u in range(G.n):
        while q[u] and weighted_chi(G, q[:u] + [q[u] - 1] + q[u + 1:]) == target:
            q[u] -= 1
    return tuple(q)


@dataclass(frozen=True)
class Part:
    vertices: int
    weights: tuple[int, ...]
    # (quotient vertex, bag of G-vertices it stands for), one per vertex of the quotient
    bags: tuple[tuple[int, int], ...]

    @property
    def quotient_vertices(self) -> int:
        return support(self.weights)


@dataclass(frozen=True)
class Decomposition:
    n: int
    parts: tuple[Part, ...]
    minimal_weights: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.parts)

    def quotient(self, G: Graph, i: int) -> Graph:
        return induced(G, self.parts[i].quotient_vertices)

    def to_json(self, G: Graph) -> dict:
        return {
            "k": self.k,
            "minimal_weights": list(self.minimal_weights),
            "parts": [sorted(bits(p.vertices)) for p in self.parts],
            "weights": [list(p.weights) for p in self.parts],
            "quotients": [write_graph6(self.quotient(G, i)) for i in range(self.k)],
        }

    def dumps(self, G: Graph) -> str:
        return json.dumps(self.to_json(G))


def _restrict(q: Sequence[int], mask: int) -> tuple[int, ...]:
    return tuple(x if mask >> u & 1 else 0 for u, x in enumerate(q))


def decompose_qp4(G: Graph, q: Sequence[int] | None = None, check_precondition: bool = True) -> Decomposition:
    """Split a weighted Q{P4}-free graph into completely joined parts whose
    reduced weights live on prime quotients without clique-separators of modules.

    Raises PreconditionError (with the witness) if G contains an induced Q{P4}.
    """
    q = (1,) * G.n if q is None else check_weights(G, q)
    if check_precondition:
        w = find_induced(G, QP4)
        if w is not None:
            raise PreconditionError("graph contains an induced Q{P4}", w)
    if not support(q):
        low = 1 if G.n else 0
        return Decomposition(G.n, (Part(low, (0,) * G.n, ()),), q)
    qm = minimalize_weights(G, q)
    parts = tuple(_split(G, qm))
    dec = Decomposition(G.n, parts, qm)
    _check_structure(G, dec)
    return dec


def _split(G: Graph, q: tuple[int, ...]) -> list[Part]:
    live = support(q)
    cocomps = components(complement(G), live)
    if len(cocomps) > 1:
        # each co-component is a module complete to the rest of the support
        out: list[Part] = []
        for C in cocomps:
            out.extend(_split(G, _restrict(q, C)))
        return out
    H = induced(G, live)
    index = list(bits(live))
    if H.n == 1:
        return [Part(live, q, ((index[0], live),))]
    if not is_connected(H):
        raise DecompositionError("support of a minimal weighting must be connected")
    maximal = [index_mask(index, m.vertices) for m in maximal_homogeneous_sets(H)]
    seen = 0
    for m in maximal:
        if m & seen:
            raise OverlappingHomogeneousSets(maximal)
        seen |= m
        if not is_clique(G, m):
            raise DecompositionError(f"maximal homogeneous set {sorted(bits(m))} is not a clique")
    weights = list(q)
    bags = []
    for m in maximal:
        rep = (m & -m).bit_length() - 1
        total = sum(q[u] for u in bits(m))
        for u in bits(m):
            weights[u] = 0
        weights[rep] = total
        bags.append((rep, m))
    for u in bits(live & ~seen):
        bags.append((u, 1 << u))
    return [Part(live, tuple(weights), tuple(sorted(bags)))]


def index_mask(index: Sequence[int], local: int) -> int:
    """Map a vertex mask of ``induced(G, S)`` back to G's labels (``index`` = sorted S)."""
    return sum(1 << index[i] for i in bits(local))


def _check_structure(G: Graph, dec: Decomposition) -> None:
    seen = 0
    for i, p in enumerate(dec.parts):
        if not p.vertices or p.vertices & seen:
            raise DecompositionError("parts must be non-empty and pairwise disjoint")
        seen |= p.vertices
        if p.quotient_vertices & ~p.vertices:
            raise DecompositionError("reduced weights must live inside their part")
        for other in dec.parts[i + 1:]:
            if any(G.adj[u] & other.vertices != other.vertices for u in bits(p.vertices)):
                raise DecompositionError("parts must be pairwise complete")
        Q = dec.quotient(G, i)
        if not is_prime(Q) or find_clique_separator_of_modules(Q) is not None:
            raise DecompositionError(f"quotient of part {i} is not prime and separator-free")


def is_expansion_of_quotient(G: Graph, part: Part) -> bool:
    """G[part] is a 'non-empty, 2K1-free'-expansion of the quotient through ``part.bags``."""
    covered = 0
    for rep, bag in part.bags:
        if not bag >> rep & 1 or bag & covered or not is_clique(G, bag):
            return False
        covered |= bag
    if covered != part.vertices or {r for r, _ in part.bags} != set(bits(part.quotient_vertices)):
        return False
    for r1, b1 in part.bags:
        for r2, b2 in part.bags:
            if r1 < r2:
                want = b2 if G.has_edge(r1, r2) else 0
                if any(G.adj[u] & b2 != want for u in bits(b1)):
                    return False
    return True


# --------------------------------------------------------------------------
# module trichotomy in Q{F}-free graphs

@dataclass(frozen=True)
class Trichotomy:
    kind: str  # "F-free" | "separator" | "empty-shell"
    separator: Optional[CliqueSeparatorOfModules] = None


class TrichotomyViolation(DecompositionError):
    pass


def module_trichotomy(G: Graph, F: Graph, M) -> Trichotomy:
    """Which of: G[M] is F-free; N(M) is a clique-separator of modules cutting M
    off from the vertices at distance two; no vertex at distance two."""
    if not is_connected(G):
        raise ValueError("module_trichotomy needs a connected graph")
    w = find_induced(G, build_qf(F))
    if w is not None:
        raise PreconditionError("graph contains an induced Q{F}", w)
    m = to_mask(M)
    if not is_module(G, m):
        raise ValueError(f"{sorted(bits(m))} is not a module")
    if find_induced(induced(G, m), F) is None:
        return Trichotomy("F-free")
    N = neighborhood(G, m)
    far = neighborhood_i(G, m, 2)
    if far:
        parts = module_partition(G, N) if N else None
        if parts is not None:
            sep = CliqueSeparatorOfModules(parts, m | N, G.vertex_mask & ~m)
            return Trichotomy("separator", sep)
    else:
        return Trichotomy("empty-shell")
    raise TrichotomyViolation(f"no case holds for module {sorted(bits(m))}")
