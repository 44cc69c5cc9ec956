"""Vectorized invariants over all labeled graphs on n <= 7 vertices.

A labeled graph is an integer code whose bit k is the k-th vertex pair in
graph6 order (0,1), (0,2), (1,2), (0,3), ...; so the code for n vertices is
also a valid code for any larger n, with the extra vertices isolated.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .graph import Graph
from .patterns import GraphClass, _forbidden_graph, cycle_graph

LABELED_LIMIT = 7


def pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for j in range(n) for i in range(j))


def code_of(G: Graph) -> int:
    return sum(1 << pair_index(u, v) for u, v in G.edges())


def graph_from_code(n: int, code: int) -> Graph:
    adj = [0] * n
    for k, (i, j) in enumerate(_pairs(n)):
        if code >> k & 1:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return Graph(n, tuple(adj))


def all_codes(n: int) -> np.ndarray:
    if n > LABELED_LIMIT:
        raise ValueError(f"labeled sweeps stop at {LABELED_LIMIT} vertices")
    return np.arange(1 << num_pairs(n), dtype=np.int64)


def sub_codes(codes: np.ndarray, S: Sequence[int]) -> np.ndarray:
    """Codes of the subgraphs induced on S (relabeled in ascending order)."""
    S = sorted(S)
    out = np.zeros_like(codes)
    for p, (a, b) in enumerate(_pairs(len(S))):
        out |= ((codes >> pair_index(S[a], S[b])) & 1) << p
    return out


@lru_cache(maxsize=None)
def copies_table(H: Graph) -> np.ndarray:
    """Boolean table over codes on |H| vertices marking every labeled copy of H."""
    k = H.n
    table = np.zeros(1 << num_pairs(k), dtype=bool)
    edges = list(H.edges())
    for perm in permutations(range(k)):
        table[sum(1 << pair_index(perm[u], perm[v]) for u, v in edges)] = True
    return table


def contains(n: int, codes: np.ndarray, H: Graph) -> np.ndarray:
    """Which codes contain an induced copy of H."""
    hit = np.zeros(len(codes), dtype=bool)
    if H.n > n:
        return hit
    table = copies_table(H)
    for S in combinations(range(n), H.n):
        hit |= table[sub_codes(codes, S)]
    return hit


def has_odd_hole(n: int, codes: np.ndarray) -> np.ndarray:
    hit = np.zeros(len(codes), dtype=bool)
    for length in range(5, n + 1, 2):
        hit |= contains(n, codes, cycle_graph(length))
    return hit


def complement_codes(n: int, codes: np.ndarray) -> np.ndarray:
    return codes ^ ((1 << num_pairs(n)) - 1)


def _subset_pair_masks(n: int) -> np.ndarray:
    """For each vertex subset T, the code bits of the pairs inside T."""
    masks = np.zeros(1 << n, dtype=np.int64)
    for T in range(1 << n):
        vs = [v for v in range(n) if T >> v & 1]
        masks[T] = sum(1 << pair_index(a, b) for a, b in combinations(vs, 2))
    return masks


def clique_numbers(n: int, codes: np.ndarray) -> np.ndarray:
    best = np.zeros(len(codes), dtype=np.int8)
    if n:
        best[:] = 1
    masks = _subset_pair_masks(n)
    for T in range(1, 1 << n):
        size = bin(T).count("1")
        if size >= 2:
            inside = (codes & masks[T]) == masks[T]
            best[inside & (best < size)] = size
    return best


def independence_numbers(n: int, codes: np.ndarray) -> np.ndarray:
    return clique_numbers(n, complement_codes(n, codes))


def degrees(n: int, codes: np.ndarray) -> np.ndarray:
    deg = np.zeros((len(codes), n), dtype=np.int8)
    for i, j in _pairs(n):
        e = ((codes >> pair_index(i, j)) & 1).astype(np.int8)
        deg[:, i] += e
        deg[:, j] += e
    return deg


def max_degrees(n: int, codes: np.ndarray) -> np.ndarray:
    if n == 0:
        return np.zeros(len(codes), dtype=np.int8)
    return degrees(n, codes).max(axis=1)


def _independent_subset_counts(n: int, codes: np.ndarray) -> np.ndarray:
    """i[g, S] = number of independent subsets of S in graph g (zeta transform)."""
    masks = _subset_pair_masks(n)
    counts = ((codes[:, None] & masks[None, :]) == 0).astype(np.int64)
    for v in range(n):
        bit = 1 << v
        idx = np.array([S for S in range(1 << n) if S & bit])
        counts[:, idx] += counts[:, idx ^ bit]
    return counts


def _cover_counts(n: int, counts: np.ndarray, k: int, within: int) -> np.ndarray:
    """Number of k-tuples of independent sets covering ``within`` (inclusion-exclusion)."""
    subsets = [S for S in range(1 << n) if S & ~within == 0]
    size = bin(within).count("1")
    signs = np.array([(-1) ** (size - bin(S).count("1")) for S in subsets], dtype=np.int64)
    return (counts[:, subsets] ** k) @ signs


def chromatic_numbers(n: int, codes: np.ndarray, chunk: int = 1 << 15) -> np.ndarray:
    """Exact chi for each code by counting covers with independent sets (int64 is exact for n <= 7)."""
    if n > LABELED_LIMIT:
        raise ValueError(f"batch colouring stops at {LABELED_LIMIT} vertices")
    out = np.zeros(len(codes), dtype=np.int8)
    full = (1 << n) - 1
    for start in range(0, len(codes), chunk):
        block = codes[start:start + chunk]
        counts = _independent_subset_counts(n, block)
        chi = np.zeros(len(block), dtype=np.int8)
        open_ = np.ones(len(block), dtype=bool) if n else np.zeros(len(block), dtype=bool)
        for k in range(1, n + 1):
            if not open_.any():
                break
            done = _cover_counts(n, counts[open_], k, full) > 0
            rows = np.flatnonzero(open_)[done]
            chi[rows] = k
            open_[rows] = False
        out[start:start + chunk] = chi
    return out


def delete_vertex_codes(n: int, codes: np.ndarray, u: int) -> np.ndarray:
    return sub_codes(codes, [v for v in range(n) if v != u])


def is_prime_batch(n: int, codes: np.ndarray) -> np.ndarray:
    """No vertex set M with 1 < |M| < n that every outside vertex sees entirely or not at all."""
    rows = np.zeros((len(codes), n), dtype=np.int64)
    for i, j in _pairs(n):
        e = (codes >> pair_index(i, j)) & 1
        rows[:, i] |= e << j
        rows[:, j] |= e << i
    prime = np.ones(len(codes), dtype=bool)
    for M in range(1 << n):
        size = bin(M).count("1")
        if not 1 < size < n:
            continue
        module = np.ones(len(codes), dtype=bool)
        for v in range(n):
            if not M >> v & 1:
                seen = rows[:, v] & M
                module &= (seen == 0) | (seen == M)
        prime &= ~module
    return prime


def class_mask(n: int, codes: np.ndarray, cls: GraphClass) -> np.ndarray:
    """Membership of each code in a hereditary class, filtering survivors pattern by pattern."""
    keep = np.ones(len(codes), dtype=bool)
    for name in cls.forbidden:
        live = np.flatnonzero(keep)
        keep[live[contains(n, codes[live], _forbidden_graph(name))]] = False
    if cls.odd_holes:
        live = np.flatnonzero(keep)
        keep[live[has_odd_hole(n, codes[live])]] = False
    return keep
