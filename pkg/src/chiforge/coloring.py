"""Exact clique, independence and (weighted) chromatic numbers.

Two independent chromatic-number engines are provided and cross-checked:

* :func:`chromatic_number_cover` -- iterative deepening over covers of the
  vertex set by maximal independent sets, returning explicit colour classes;
* :func:`chromatic_number_counting` -- inclusion-exclusion over the subset
  lattice, counting k-tuples of independent sets that cover V(G).

Weighted problems get a third, direct search over colour classes
(:func:`weighted_chi`) which never builds the expansion.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import NamedTuple, Sequence

import numpy as np

from .graph import (
    Graph,
    bits,
    check_weights,
    complement,
    delete_vertex,
    expansion,
    expansion_blocks,
    max_degree,
    popcount,
)

EXACT_BUDGET = 24
_PRIMES = (2_147_483_647, 2_147_483_629)


class BudgetExceeded(RuntimeError):
    """The instance is larger than the exact solvers accept."""


class EngineDisagreement(AssertionError):
    """Two independent routes returned different values; always a bug."""


@dataclass(frozen=True)
class ColoringCertificate:
    k: int
    colours: tuple[tuple[int, ...], ...]

    def validate(self, G: Graph, q: Sequence[int] | None = None) -> None:
        """Raise ``ValueError`` unless this is a proper q-colouring of G using colours 1..k."""
        q = (1,) * G.n if q is None else tuple(q)
        if len(self.colours) != G.n:
            raise ValueError("one colour set per vertex required")
        for u, cs in enumerate(self.colours):
            if len(set(cs)) != len(cs) or len(cs) != q[u]:
                raise ValueError(f"vertex {u} has {len(set(cs))} colours, needs {q[u]}")
            if any(not 1 <= c <= self.k for c in cs):
                raise ValueError(f"vertex {u} uses a colour outside 1..{self.k}")
        for u, v in G.edges():
            if set(self.colours[u]) & set(self.colours[v]):
                raise ValueError(f"adjacent vertices {u} and {v} share a colour")

    def to_json(self) -> dict:
        return {"k": self.k, "colours": [list(c) for c in self.colours]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _certificate(n: int, classes: Sequence[int], q: Sequence[int]) -> ColoringCertificate:
    need = list(q)
    colours: list[list[int]] = [[] for _ in range(n)]
    for c, cls in enumerate(classes, start=1):
        for u in bits(cls):
            if need[u]:
                colours[u].append(c)
                need[u] -= 1
    assert not any(need), "colour classes do not cover the weights"
    return ColoringCertificate(len(classes), tuple(tuple(c) for c in colours))


# --------------------------------------------------------------------------
# cliques and independent sets

def max_weight_clique(G: Graph, q: Sequence[int] | None = None, within: int | None = None) -> tuple[int, int]:
    """``(weight, clique mask)`` of a maximum-weight clique, by branch and bound."""
    q = (1,) * G.n if q is None else q
    P = G.vertex_mask if within is None else within
    P &= sum(1 << u for u in range(G.n) if q[u] > 0)
    best = [0, 0]

    def total(mask):
        return sum(q[u] for u in bits(mask))

    def expand(cur, cur_w, P):
        if cur_w > best[0]:
            best[0], best[1] = cur_w, cur
        order = sorted(bits(P), key=lambda u: q[u])
        rest = total(P)
        # heaviest first; each branch excludes the vertices tried before it
        for v in reversed(order):
            if cur_w + rest <= best[0]:
                return
            expand(cur | 1 << v, cur_w + q[v], P & G.adj[v])
            P &= ~(1 << v)
            rest -= q[v]

    expand(0, 0, P)
    return best[0], best[1]


def clique_number_weighted(G: Graph, q: Sequence[int] | None = None) -> int:
    if q is not None:
        q = check_weights(G, q)
    return max_weight_clique(G, q)[0]


def clique_number(G: Graph) -> int:
    return max_weight_clique(G)[0]


def independence_number_weighted(G: Graph, q: Sequence[int] | None = None) -> int:
    return clique_number_weighted(complement(G), q)


def independence_number(G: Graph) -> int:
    return clique_number(complement(G))


def maximal_independent_sets(G: Graph, within: int | None = None) -> list[int]:
    """All maximal independent sets of ``G[within]`` (Bron-Kerbosch with pivoting on the complement)."""
    W = G.vertex_mask if within is None else within
    non = [W & ~G.adj[v] & ~(1 << v) for v in range(G.n)]
    out: list[int] = []

    def bk(R, P, X):
        if not P:
            if not X:
                out.append(R)
            return
        u = max(bits(P | X), key=lambda w: popcount(P & non[w]))
        for v in bits(P & ~non[u]):
            bk(R | 1 << v, P & non[v], X & non[v])
            P &= ~(1 << v)
            X |= 1 << v

    if W:
        bk(0, W, 0)
    return out


# --------------------------------------------------------------------------
# engine (a): cover by maximal independent sets

def _greedy_colouring(G: Graph, R: int) -> list[int]:
    """DSATUR on ``G[R]``; returns colour classes as masks."""
    classes: list[int] = []
    left = R
    while left:
        def key(v):
            sat = sum(1 for c in classes if c & G.adj[v])
            return (sat, popcount(G.adj[v] & R), -v)
        v = max(bits(left), key=key)
        for i, c in enumerate(classes):
            if not c & G.adj[v]:
                classes[i] |= 1 << v
                break
        else:
            classes.append(1 << v)
        left &= ~(1 << v)
    return classes


def _twin_classes(G: Graph) -> list[int]:
    """Vertex masks of true-twin classes (equal closed neighbourhoods)."""
    seen: dict[int, int] = {}
    for v in range(G.n):
        key = G.adj[v] | 1 << v
        seen[key] = seen.get(key, 0) | 1 << v
    return list(seen.values())


def chromatic_number_cover(G: Graph) -> tuple[int, list[int]]:
    """Exact chi with colour classes, by iterative deepening over MIS covers."""
    if G.n > EXACT_BUDGET:
        raise BudgetExceeded(f"{G.n} vertices exceeds exact budget {EXACT_BUDGET}")
    if G.n == 0:
        return 0, []
    full = G.vertex_mask
    upper = _greedy_colouring(G, full)
    lower = max_weight_clique(G)[0]
    if lower == len(upper):
        return lower, upper
    twins = _twin_classes(G)
    failed: dict[int, int] = {}

    def reps(R):
        # true twins are interchangeable: a colour class may use the lowest remaining one of each class
        m = 0
        for t in twins:
            t &= R
            if t:
                m |= t & -t
        return m

    def cover(R, k):
        if not R:
            return []
        if popcount(R) <= k:
            return [1 << v for v in bits(R)]
        if k == 0 or failed.get(R, -1) >= k:
            return None
        v = max(bits(R), key=lambda w: popcount(G.adj[w] & R))
        base = reps(R) & ~G.adj[v] & ~(1 << v)
        for I in maximal_independent_sets(G, base):
            # I ∪ {v} is maximal in G[R]: everything else is a neighbour of v or of I
            sub = cover(R & ~(I | 1 << v), k - 1)
            if sub is not None:
                return [I | 1 << v] + sub
        if not base:
            sub = cover(R & ~(1 << v), k - 1)
            if sub is not None:
                return [1 << v] + sub
        failed[R] = max(failed.get(R, -1), k)
        return None

    for k in range(lower, len(upper)):
        found = cover(full, k)
        if found is not None:
            return k, found
    return len(upper), upper


# --------------------------------------------------------------------------
# engine (b): inclusion-exclusion over independent-set counts

def _independent_counts(G: Graph) -> np.ndarray:
    """``i[S]`` = number of independent subsets of S (including the empty set), for every S."""
    indep = np.ones(1, dtype=bool)
    for v in range(G.n):
        low = G.adj[v] & ((1 << v) - 1)
        idx = np.arange(1 << v, dtype=np.int64)
        indep = np.concatenate([indep, indep & ((idx & low) == 0)])
    counts = indep.astype(np.int64)
    for v in range(G.n):
        view = counts.reshape(-1, 2, 1 << v)
        view[:, 1, :] += view[:, 0, :]
    return counts


def chromatic_number_counting(G: Graph) -> int:
    """Exact chi as the least k with a positive count of covering k-tuples of independent sets."""
    n = G.n
    if n > EXACT_BUDGET:
        raise BudgetExceeded(f"{n} vertices exceeds exact budget {EXACT_BUDGET}")
    if n == 0:
        return 0
    counts = _independent_counts(G)
    sizes = np.zeros(1, dtype=np.int64)
    for v in range(n):
        sizes = np.concatenate([sizes, sizes + 1])
    sign = np.where((n - sizes) % 2 == 0, 1, -1)
    if n <= 12:
        c = [int(x) for x in counts]
        s = [int(x) for x in sign]
        pw = [1] * len(c)
        for k in range(1, n + 1):
            pw = [a * b for a, b in zip(pw, c)]
            if sum(a * b for a, b in zip(pw, s)) > 0:
                return k
        raise AssertionError("n colours always suffice")
    # Residues modulo two primes: a nonzero residue proves a nonzero count.
    pws = [np.ones_like(counts) for _ in _PRIMES]
    for k in range(1, n + 1):
        for i, p in enumerate(_PRIMES):
            pws[i] = pws[i] * (counts % p) % p
            if int((pws[i] * sign).sum() % p) != 0:
                return k
    raise AssertionError("n colours always suffice")


def chromatic_number(G: Graph, cross_check: bool = True) -> tuple[int, ColoringCertificate]:
    """Exact chi(G) with a certificate; both engines must agree when ``cross_check``."""
    k, classes = chromatic_number_cover(G)
    if cross_check:
        other = chromatic_number_counting(G)
        if other != k:
            raise EngineDisagreement(f"cover engine says {k}, counting engine says {other}")
    return k, _certificate(G.n, classes, (1,) * G.n)


def chi(G: Graph) -> int:
    return chromatic_number_cover(G)[0]


# --------------------------------------------------------------------------
# weighted colouring

@lru_cache(maxsize=1 << 18)
def _weighted_cover(G: Graph, q: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    supp = sum(1 << u for u in range(G.n) if q[u])
    if not supp:
        return 0, ()
    lower = max_weight_clique(G, q)[0]
    failed: dict[tuple[int, ...], int] = {}
    omega_cache: dict[tuple[int, ...], int] = {}

    def omega(r):
        w = omega_cache.get(r)
        if w is None:
            w = omega_cache[r] = max_weight_clique(G, r)[0]
        return w

    def cover(r, k):
        live = sum(1 << u for u in range(G.n) if r[u])
        if not live:
            return []
        if k == 0 or failed.get(r, -1) >= k or omega(r) > k:
            return None
        v = max(bits(live), key=lambda w: (r[w], popcount(G.adj[w] & live)))
        for I in maximal_independent_sets(G, live & ~G.adj[v] & ~(1 << v)) or [0]:
            cls = I | 1 << v
            nxt = tuple(x - 1 if cls >> u & 1 and x else x for u, x in enumerate(r))
            sub = cover(nxt, k - 1)
            if sub is not None:
                return [cls] + sub
        failed[r] = max(failed.get(r, -1), k)
        return None

    k = lower
    while True:
        found = cover(q, k)
        if found is not None:
            return k, tuple(found)
        k += 1


def weighted_chi(G: Graph, q: Sequence[int]) -> int:
    """chi_q(G) by the direct route (colour classes over residual weights)."""
    return _weighted_cover(G, check_weights(G, q))[0]


def chromatic_number_weighted(G: Graph, q: Sequence[int], cross_check: bool = True) -> tuple[int, ColoringCertificate]:
    """Exact chi_q(G) with a q-colouring certificate.

    The direct route always runs; with ``cross_check`` the expansion route
    (chi of the q-expansion, which needs total weight within the exact budget)
    must agree with it.
    """
    q = check_weights(G, q)
    k, classes = _weighted_cover(G, q)
    cert = _certificate(G.n, classes, q)
    if cross_check:
        if sum(q) > EXACT_BUDGET:
            raise BudgetExceeded(f"total weight {sum(q)} exceeds exact budget {EXACT_BUDGET}")
        k_exp = chi_via_expansion(G, q)[0]
        if k_exp != k:
            raise EngineDisagreement(f"expansion route says {k_exp}, direct route says {k}")
    return k, cert


def chi_via_expansion(G: Graph, q: Sequence[int]) -> tuple[int, ColoringCertificate]:
    """chi_q(G) as chi of the q-expansion, with the colouring folded back onto G."""
    q = check_weights(G, q)
    H = expansion(G, q)
    k, cert = chromatic_number(H, cross_check=True)
    colours = []
    for bag in expansion_blocks(q):
        colours.append(tuple(sorted(c for w in bits(bag) for c in cert.colours[w])))
    return k, ColoringCertificate(k, tuple(colours))


class C5Formula(NamedTuple):
    value: int
    bound: int


def chi_weighted_C5_closed_form(q: Sequence[int]) -> C5Formula:
    """chi_q of the 5-cycle (weights in cycle order) as max(omega_q, ceil(q(C)/2)),
    with the bound ceil((5 omega_q - 1)/4)."""
    if len(q) != 5 or any(x < 0 for x in q):
        raise ValueError("need five non-negative weights")
    omega = max(q[i] + q[(i + 1) % 5] for i in range(5))
    value = max(omega, -(-sum(q) // 2))
    bound = -(-(5 * omega - 1) // 4)
    assert value <= bound, (q, value, bound)
    return C5Formula(value, bound)


def p5c4_bound(omega: int) -> int:
    """ceil((5 omega - 1) / 4)."""
    return -(-(5 * omega - 1) // 4)


def tight_c5_weights(omega: int) -> tuple[int, ...]:
    """Weights on the 5-cycle attaining the (P5, C4)-free bound for clique number ``omega``."""
    hi, lo = -(-omega // 2), omega // 2
    return (hi, lo, hi, lo, lo)


# --------------------------------------------------------------------------
# criticality and minimality

def critical_drops(G: Graph) -> list[int]:
    """chi(G - u) for every vertex u."""
    return [chi(delete_vertex(G, u)) for u in range(G.n)]


def is_critical(G: Graph) -> bool:
    if G.n < 1:
        raise ValueError("criticality needs at least one vertex")
    k = chi(G)
    return all(d < k for d in critical_drops(G))


def is_weight_minimal(G: Graph, q: Sequence[int]) -> bool:
    """True iff every single-unit decrement of q lowers chi_q."""
    q = check_weights(G, q)
    k = weighted_chi(G, q)
    for u in range(G.n):
        if q[u]:
            lower = q[:u] + (q[u] - 1,) + q[u + 1:]
            if weighted_chi(G, lower) == k:
                return False
    return True


def is_weight_minimal_bruteforce(G: Graph, q: Sequence[int]) -> bool:
    """The existential definition: no pointwise-smaller q' of smaller total with equal chi_q."""
    q = check_weights(G, q)
    k = weighted_chi(G, q)
    for r in product(*(range(x + 1) for x in q)):
        if r != q and weighted_chi(G, r) == k:
            return False
    return True


def reed_bound(G: Graph) -> int:
    return (max_degree(G) + clique_number(G) + 2) // 2


def reed_bound_holds(G: Graph) -> bool:
    return chi(G) <= reed_bound(G)
