"""Graph catalogs and the verifiers that check the chi-binding results on them.

Sources:

* ``builtin:N`` -- every labeled graph on 1..N vertices (N <= 7);
* ``small:N``   -- one graph per isomorphism class on 1..min(N, 7) vertices
  (networkx atlas), plus for N = 8 every one-vertex extension of the 7-vertex
  classes (complete up to isomorphism, with repeats);
* ``file:PATH`` -- a graph6 file, one graph per line.

Graphs with at most 8 vertices are handled as integer codes (see
:mod:`chiforge.labeled`) so that class filters and most invariants run
vectorized; larger graphs go through the per-graph routines.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from pathlib import Path
from typing import Iterator, Optional, Sequence

import numpy as np

from . import labeled as L
from .coloring import (
    BudgetExceeded,
    EngineDisagreement,
    chi_weighted_C5_closed_form,
    chromatic_number,
    chromatic_number_cover,
    clique_number,
    clique_number_weighted,
    independence_number,
    is_critical,
    is_weight_minimal,
    p5c4_bound,
    tight_c5_weights,
    weighted_chi,
)
from .decompose import (
    DecompositionError,
    PreconditionError,
    TrichotomyViolation,
    decompose_qp4,
    find_clique_separator_of_modules,
    is_expansion_of_quotient,
    is_module,
    is_prime,
    module_trichotomy,
)
from .graph import (
    Graph,
    bits,
    cycle_graph,
    empty_graph,
    expansion,
    induced,
    is_complete,
    is_connected,
    join,
    max_degree,
    parse_graph6,
    path_graph,
    read_graph6_lines,
    write_graph6,
)
from .patterns import (
    CLASSES,
    QP4,
    ZOO,
    GraphClass,
    _embeddings,
    _forbidden_graph,
    build_qf,
    find_induced,
    graph_class,
    has_complete_bipartite_spanning_subgraph,
    is_isomorphic,
    is_perfect,
)

CODE_LIMIT = 8
GRID_SEED = 20240229
GRID_SAMPLES = 64
REDUCTION_NOTE = (
    "catalog-relative check: the equality of optimal chi-binding functions is not finitely "
    "certifiable; tables compare class maxima per (omega, n) within this catalog only"
)

REDUCTIONS = {
    "1.2i": ("P5-banner", "3K1"),
    "1.2ii": ("P5-cobanner", "2K2"),
    "1.2iii": ("oddhole-banner", "C5-3K1"),
}
CRITICAL_CLASSES = {
    "1.3i": ("P5-banner", "3K1"),
    "1.3ii": ("P5-cobanner", "2K2"),
    "1.3iii": ("oddhole-banner", "C5-3K1"),
    "1.3iv": ("P5-C4", None),
}


def worker_count() -> int:
    env = os.environ.get("CHIFORGE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


# --------------------------------------------------------------------------
# catalogs

def enumerate_labeled(n: int) -> Iterator[Graph]:
    """Every labeled graph on n vertices, in code order."""
    if n > L.LABELED_LIMIT:
        raise BudgetExceeded(f"labeled enumeration stops at n={L.LABELED_LIMIT}; use a graph6 catalog (file:PATH)")
    if n < 1:
        raise ValueError("n must be at least 1")
    for code in range(1 << L.num_pairs(n)):
        yield L.graph_from_code(n, code)


@lru_cache(maxsize=None)
def _atlas_codes(n: int) -> np.ndarray:
    import networkx as nx

    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() == n:
            out.append(sum(1 << L.pair_index(u, v) for u, v in g.edges()))
    return np.array(sorted(out), dtype=np.int64)


@lru_cache(maxsize=None)
def isomorphism_class_codes(n: int) -> np.ndarray:
    """One code per isomorphism class for n <= 7; for n = 8, all one-vertex extensions of those."""
    if n <= 7:
        return _atlas_codes(n)
    if n == 8:
        base = _atlas_codes(7)
        ext = np.array([sum(1 << L.pair_index(i, 7) for i in range(7) if m >> i & 1) for m in range(128)],
                       dtype=np.int64)
        return np.unique((base[:, None] | ext[None, :]).ravel())
    raise BudgetExceeded("isomorphism-class catalogs stop at n=8; use a graph6 catalog (file:PATH)")


@dataclass(frozen=True)
class CatalogSource:
    kind: str  # "builtin" | "small" | "file"
    n_max: int = 0
    path: str = ""
    connected_only: bool = False

    @classmethod
    def parse(cls, text: str) -> "CatalogSource":
        kind, _, arg = text.partition(":")
        if kind in ("builtin", "small"):
            try:
                n = int(arg)
            except ValueError:
                raise ValueError(f"bad source {text!r}: expected {kind}:N") from None
            limit = L.LABELED_LIMIT if kind == "builtin" else CODE_LIMIT
            if n > limit:
                raise BudgetExceeded(f"{kind}:{n} exceeds n={limit}; use a graph6 catalog (file:PATH)")
            if n < 1:
                raise ValueError("catalog size must be at least 1")
            return cls(kind, n_max=n)
        if kind == "file" and arg:
            return cls("file", path=arg)
        raise ValueError(f"bad source {text!r}: expected builtin:N, small:N or file:PATH")

    @property
    def label(self) -> str:
        return f"file:{self.path}" if self.kind == "file" else f"{self.kind}:{self.n_max}"

    def blocks(self) -> list["Block"]:
        return _source_blocks(self)

    def graphs(self) -> Iterator[Graph]:
        for b in self.blocks():
            for i in range(len(b)):
                yield b.graph(i)


@lru_cache(maxsize=None)
def _source_blocks(source: CatalogSource) -> list["Block"]:
    if source.kind == "builtin":
        blocks = [Block(n, L.all_codes(n)) for n in range(1, source.n_max + 1)]
    elif source.kind == "small":
        blocks = [Block(n, isomorphism_class_codes(n)) for n in range(1, source.n_max + 1)]
    else:
        with open(source.path) as fh:
            graphs = list(read_graph6_lines(fh))
        by_n: dict[int, list[Graph]] = {}
        for G in graphs:
            by_n.setdefault(G.n, []).append(G)
        blocks = []
        for n in sorted(by_n):
            if 1 <= n <= CODE_LIMIT:
                blocks.append(Block(n, np.array([L.code_of(G) for G in by_n[n]], dtype=np.int64)))
            elif n > CODE_LIMIT:
                blocks.append(Block(n, None, by_n[n]))
    if source.connected_only:
        blocks = [b.restrict(b.connected) for b in blocks]
    return blocks


# --------------------------------------------------------------------------
# exact chi over labeled codes, memoized and cross-checked

_CHI_MEMO: dict[int, np.ndarray] = {}


def _cover_chis(n: int, codes: Sequence[int]) -> list[int]:
    return [chromatic_number_cover(L.graph_from_code(n, int(c)))[0] for c in codes]


def _map_chunks(fn, n: int, codes: np.ndarray) -> list[int]:
    workers = worker_count()
    if workers <= 1 or len(codes) < 20_000:
        return fn(n, codes)
    chunks = np.array_split(codes, workers * 4)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(fn, [n] * len(chunks), chunks)
        return [x for part in parts for x in part]


def labeled_chi(n: int, codes: np.ndarray) -> np.ndarray:
    """chi for each code on n <= 7 vertices: counting engine, confirmed graph by graph by the cover engine."""
    if n == 0:
        return np.zeros(len(codes), dtype=np.int8)
    memo = _CHI_MEMO.get(n)
    if memo is None:
        memo = _CHI_MEMO[n] = np.full(1 << L.num_pairs(n), -1, dtype=np.int8)
    todo = np.unique(codes[memo[codes] < 0])
    if len(todo):
        counted = L.chromatic_numbers(n, todo)
        covered = np.array(_map_chunks(_cover_chis, n, todo), dtype=np.int8)
        bad = np.flatnonzero(counted != covered)
        if len(bad):
            g6 = write_graph6(L.graph_from_code(n, int(todo[bad[0]])))
            raise EngineDisagreement(f"engines disagree on {g6}: counting {counted[bad[0]]}, cover {covered[bad[0]]}")
        memo[todo] = counted
    return memo[codes]


class Block:
    """Graphs of one order, as codes (n <= 8) or as explicit graphs."""

    def __init__(self, n: int, codes: Optional[np.ndarray], graphs: Optional[list[Graph]] = None):
        self.n = n
        self.codes = codes
        self._graphs = graphs

    def __len__(self) -> int:
        return len(self.codes) if self.codes is not None else len(self._graphs)

    def graph(self, i: int) -> Graph:
        if self.codes is not None:
            return L.graph_from_code(self.n, int(self.codes[i]))
        return self._graphs[i]

    def graph6(self, i: int) -> str:
        return write_graph6(self.graph(i))

    def restrict(self, mask: np.ndarray) -> "Block":
        idx = np.flatnonzero(mask)
        if self.codes is not None:
            return Block(self.n, self.codes[idx])
        return Block(self.n, None, [self._graphs[i] for i in idx])

    def _per_graph(self, fn, dtype=np.int8) -> np.ndarray:
        return np.array([fn(self.graph(i)) for i in range(len(self))], dtype=dtype)

    def members(self, cls: GraphClass) -> "Block":
        if self.codes is not None:
            return self.restrict(L.class_mask(self.n, self.codes, cls))
        return self.restrict(self._per_graph(lambda G: G in cls, bool))

    def contains(self, H: Graph) -> np.ndarray:
        if self.codes is not None:
            return L.contains(self.n, self.codes, H)
        return self._per_graph(lambda G: find_induced(G, H) is not None, bool)

    @cached_property
    def connected(self) -> np.ndarray:
        return self._per_graph(is_connected, bool)

    @cached_property
    def omega(self) -> np.ndarray:
        if self.codes is not None:
            return L.clique_numbers(self.n, self.codes)
        return self._per_graph(clique_number)

    @cached_property
    def alpha(self) -> np.ndarray:
        if self.codes is not None:
            return L.independence_numbers(self.n, self.codes)
        return self._per_graph(independence_number)

    @cached_property
    def delta(self) -> np.ndarray:
        if self.codes is not None:
            return L.max_degrees(self.n, self.codes)
        return self._per_graph(max_degree)

    @cached_property
    def chi(self) -> np.ndarray:
        if self.codes is not None and self.n <= L.LABELED_LIMIT:
            return labeled_chi(self.n, self.codes)
        return self._per_graph(lambda G: chromatic_number(G, cross_check=True)[0])

    @cached_property
    def critical(self) -> np.ndarray:
        if self.codes is not None and self.n <= L.LABELED_LIMIT:
            if self.n == 1:
                return np.ones(len(self), dtype=bool)
            crit = np.ones(len(self), dtype=bool)
            for u in range(self.n):
                crit &= labeled_chi(self.n - 1, L.delete_vertex_codes(self.n, self.codes, u)) < self.chi
            return crit
        return self._per_graph(is_critical, bool)

    @cached_property
    def prime(self) -> np.ndarray:
        if self.codes is not None:
            return L.is_prime_batch(self.n, self.codes)
        return self._per_graph(is_prime, bool)

    @cached_property
    def perfect(self) -> np.ndarray:
        if self.codes is not None:
            holes = L.has_odd_hole(self.n, self.codes) | L.has_odd_hole(self.n, L.complement_codes(self.n, self.codes))
            return ~holes
        return self._per_graph(is_perfect, bool)


@lru_cache(maxsize=None)
def class_blocks(source: CatalogSource, name: str) -> list[Block]:
    cls = graph_class(name)
    return [b.members(cls) for b in source.blocks()]


# --------------------------------------------------------------------------
# reports

@dataclass
class VerificationReport:
    theorem: str
    source: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)
    table: list[dict] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def fail(self, graph6: str, **detail) -> None:
        self.failures.append({"graph6": graph6, **detail})

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        """Combine two partial reports of the same theorem (failures re-sorted, tables max-merged)."""
        rows: dict[int, dict] = {}
        for row in self.table + other.table:
            old = rows.get(row["omega"])
            if old is None or (row["max_chi"], -len(row["witness_graph6"])) > (old["max_chi"], -len(old["witness_graph6"])):
                rows[row["omega"]] = row
        return VerificationReport(
            self.theorem, self.source, self.checked + other.checked,
            _sorted_failures(self.failures + other.failures),
            [rows[w] for w in sorted(rows)], sorted(set(self.notes + other.notes)),
            {**self.extra, **other.extra},
        )

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "source": self.source,
            "checked": self.checked,
            "passed": self.passed,
            "failures": _sorted_failures(self.failures),
            "table": self.table,
            "notes": self.notes,
            **self.extra,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True, default=_json_default)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["omega", "max_chi", "witness_graph6"])
        for row in self.table:
            w.writerow([row["omega"], row["max_chi"], row["witness_graph6"]])
        return buf.getvalue()

    def write(self, out_dir) -> tuple[Path, Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        stem = "report-" + self.theorem.replace("/", "_").replace(" ", "_")
        jp, cp = out / f"{stem}.json", out / f"{stem}.csv"
        jp.write_text(self.dumps() + "\n")
        cp.write_text(self.to_csv())
        return jp, cp


def _json_default(x):
    if isinstance(x, np.integer):
        return int(x)
    raise TypeError(f"not serializable: {type(x).__name__}")


def _sorted_failures(failures: list[dict]) -> list[dict]:
    return sorted(failures, key=lambda f: json.dumps(f, sort_keys=True, default=_json_default))


def extremal_table(blocks: Sequence[Block]) -> list[dict]:
    """omega -> max chi over the blocks, with the first attaining graph (by order, then code)."""
    best: dict[int, tuple[int, Block, int]] = {}
    for b in blocks:
        if not len(b):
            continue
        om, ch = b.omega, b.chi
        for w in np.unique(om):
            rows = np.flatnonzero(om == w)
            i = rows[np.argmax(ch[rows])]
            if int(w) not in best or ch[i] > best[int(w)][0]:
                best[int(w)] = (int(ch[i]), b, int(i))
    return [{"omega": w, "max_chi": c, "witness_graph6": b.graph6(i)} for w, (c, b, i) in sorted(best.items())]


def per_n_table(blocks: Sequence[Block]) -> dict[tuple[int, int], int]:
    out: dict[tuple[int, int], int] = {}
    for b in blocks:
        if len(b):
            for w in np.unique(b.omega):
                out[(b.n, int(w))] = int(b.chi[b.omega == w].max())
    return out


# --------------------------------------------------------------------------
# verifiers

def verify_c5_closed_form(max_total: int = 20, omegas: Sequence[int] = range(2, 7)) -> VerificationReport:
    """Closed-form weighted chi of the 5-cycle against the exact solver, and the tight weights."""
    rep = VerificationReport("2.3", f"C5 weights with total <= {max_total}")
    C5 = cycle_graph(5)
    for q in product(range(max_total + 1), repeat=5):
        if sum(q) > max_total:
            continue
        rep.checked += 1
        exact = weighted_chi(C5, q)
        formula = chi_weighted_C5_closed_form(q).value
        if exact != formula:
            rep.fail(write_graph6(C5), weights=list(q), exact=exact, formula=formula)
    tight = []
    for w in omegas:
        q = tight_c5_weights(w)
        got = weighted_chi(C5, q)
        om = clique_number_weighted(C5, q)
        tight.append({"omega": w, "weights": list(q), "chi": got, "bound": p5c4_bound(w)})
        if got != p5c4_bound(w) or om != w:
            rep.fail(write_graph6(C5), weights=list(q), chi=got, omega=om, bound=p5c4_bound(w))
    rep.extra["tight"] = tight
    return rep


def verify_thm12_iv(source: CatalogSource, tight_omegas: Sequence[int] = range(1, 7)) -> VerificationReport:
    rep = VerificationReport("1.2iv", source.label)
    blocks = class_blocks(source, "P5-C4")
    for b in blocks:
        rep.checked += len(b)
        if not len(b):
            continue
        bound = np.array([p5c4_bound(int(w)) for w in range(b.n + 1)])[b.omega]
        for i in np.flatnonzero(b.chi > bound):
            rep.fail(b.graph6(i), omega=int(b.omega[i]), chi=int(b.chi[i]), bound=int(bound[i]))
    rep.table = extremal_table(blocks)
    for row in rep.table:
        row["bound"] = p5c4_bound(row["omega"])
    tight = []
    C5 = cycle_graph(5)
    for w in tight_omegas:
        q = tight_c5_weights(w)
        H = expansion(C5, q)
        k = chromatic_number(H, cross_check=True)[0]
        om = clique_number(H)
        member = H in CLASSES["P5-C4"]
        tight.append({"omega": w, "weights": list(q), "chi": k, "bound": p5c4_bound(w), "graph6": write_graph6(H)})
        if not member or om != w or k != p5c4_bound(w):
            rep.fail(write_graph6(H), omega=om, chi=k, bound=p5c4_bound(w), in_class=member)
    rep.extra["tight"] = tight
    return rep


def _big_bound(small: dict[int, int], w: int) -> Optional[int]:
    """Lower bound on the small class's optimal function at w from catalog maxima,
    padding with universal vertices (each adds one to both omega and chi)."""
    vals = [c + w - v for v, c in small.items() if v <= w]
    return max(vals) if vals else None


def verify_thm12_reductions(theorem: str, source: CatalogSource) -> VerificationReport:
    big_name, small_name = REDUCTIONS[theorem]
    rep = VerificationReport(theorem, source.label, notes=[REDUCTION_NOTE])
    big, small = class_blocks(source, big_name), class_blocks(source, small_name)
    big_cls = graph_class(big_name)
    # containment: every member of the small class lies in the big class
    for b in small:
        rep.checked += len(b)
        inside = b.members(big_cls)
        if len(inside) != len(b):
            missing = set(map(int, b.codes)) - set(map(int, inside.codes)) if b.codes is not None else set()
            for c in sorted(missing)[:20]:
                rep.fail(write_graph6(L.graph_from_code(b.n, c)), problem=f"{small_name} member outside {big_name}")
    for b in big:
        rep.checked += len(b)
    big_tab, small_tab = extremal_table(big), extremal_table(small)
    small_max = {r["omega"]: r["max_chi"] for r in small_tab}
    rows = []
    for r in big_tab:
        w = r["omega"]
        floor = _big_bound(small_max, w)
        rows.append({"omega": w, "max_chi": r["max_chi"], "witness_graph6": r["witness_graph6"],
                     "small_max_chi": small_max.get(w), "small_lower_bound": floor})
        if floor is None or r["max_chi"] > floor:
            rep.fail(r["witness_graph6"], omega=w, chi=r["max_chi"], small_lower_bound=floor,
                     problem=f"{big_name} maximum exceeds what {small_name} members certify")
    rep.table = rows
    per_big, per_small = per_n_table(big), per_n_table(small)
    rep.extra["per_n"] = [
        {"n": n, "omega": w, "big_max_chi": per_big.get((n, w)), "small_max_chi": per_small.get((n, w))}
        for n, w in sorted(set(per_big) | set(per_small))
    ]
    gaps = [f"omega={w}: {big_name} max {r['max_chi']} vs {small_name} max {small_max.get(w)}"
            for w, r in ((r["omega"], r) for r in rows) if small_max.get(w) != r["max_chi"]]
    rep.notes += [f"direct maxima differ within this catalog, {g}" for g in gaps]
    rep.extra["classes"] = {"big": big_name, "small": small_name}
    return rep


def recognize_clique_expansion(G: Graph) -> Optional[tuple[str, tuple[int, ...]]]:
    """If G's true-twin quotient is C5 or W5, that base and its bag sizes.

    Bag sizes come in the base's own vertex order; among the base's
    automorphisms the lexicographically smallest weight vector is returned.
    """
    classes: list[int] = []
    for u in range(G.n):
        closed = G.adj[u] | 1 << u
        for i, c in enumerate(classes):
            v = (c & -c).bit_length() - 1
            if G.adj[v] | 1 << v == closed:
                classes[i] |= 1 << u
                break
        else:
            classes.append(1 << u)
    reps = [(c & -c).bit_length() - 1 for c in classes]
    Q = induced(G, sum(1 << r for r in reps))
    sizes = [bin(c).count("1") for c in sorted(classes, key=lambda c: (c & -c))]
    for name in ("C5", "W5"):
        B = ZOO[name].graph
        if not is_isomorphic(Q, B):
            continue
        best = min(tuple(sizes[f[b]] for b in range(B.n)) for f in _embeddings(Q, B))
        return name, best
    return None


def verify_thm13(theorem: str, source: CatalogSource) -> VerificationReport:
    cls_name, target = CRITICAL_CLASSES[theorem]
    rep = VerificationReport(theorem, source.label)
    counts = []
    for b in class_blocks(source, cls_name):
        crit = b.restrict(b.critical) if len(b) else b
        rep.checked += len(crit)
        counts.append({"n": b.n, "members": len(b), "critical": len(crit)})
        if not len(crit):
            continue
        if target is not None:
            inside = crit.members(graph_class(target))
            if len(inside) != len(crit):
                ok = set(map(int, inside.codes)) if crit.codes is not None else set()
                for i in range(len(crit)):
                    if crit.codes is None:
                        G = crit.graph(i)
                        if G not in graph_class(target):
                            rep.fail(write_graph6(G), problem=f"critical but not {target}-free")
                    elif int(crit.codes[i]) not in ok:
                        rep.fail(crit.graph6(i), problem=f"critical but not {target}-free")
        else:
            for i in range(len(crit)):
                G = crit.graph(i)
                if not is_complete(G) and recognize_clique_expansion(G) is None:
                    rep.fail(write_graph6(G), problem="critical, not complete and not a C5/W5 clique expansion")
    rep.extra["critical_counts"] = counts
    return rep


def verify_cor14(source: CatalogSource) -> VerificationReport:
    rep = VerificationReport("1.4", source.label)
    tight_counts = []
    logged: dict[str, dict] = {}
    C5 = cycle_graph(5)
    for b in class_blocks(source, "P5-banner"):
        rep.checked += len(b)
        if not len(b):
            continue
        bound = (b.delta.astype(np.int64) + b.omega + 2) // 2
        for i in np.flatnonzero(b.chi > bound):
            rep.fail(b.graph6(i), chi=int(b.chi[i]), delta=int(b.delta[i]), omega=int(b.omega[i]), bound=int(bound[i]))
        tight = np.flatnonzero(b.chi == bound)
        tight_counts.append({"n": b.n, "tight": len(tight)})
        # log the named tight instances: complete graphs and the 5-cycle
        for i in tight[b.omega[tight] == b.n]:
            logged.setdefault(f"K{b.n}", {"graph6": b.graph6(i), "chi": int(b.chi[i]), "bound": int(bound[i])})
            break
        if b.n == 5:
            for i in tight:
                if is_isomorphic(b.graph(i), C5):
                    logged.setdefault("C5", {"graph6": b.graph6(i), "chi": int(b.chi[i]), "bound": int(bound[i])})
                    break
    rep.extra["tight_counts"] = tight_counts
    rep.extra["tight_instances"] = [{"name": k, **v} for k, v in sorted(logged.items(), key=lambda kv: (len(kv[0]), kv[0]))]
    return rep


def verify_superadditivity(cls_name: str, source: CatalogSource,
                           omega_pairs: Sequence[tuple[int, int]] = ((1, 1), (1, 2), (2, 1), (2, 2))) -> VerificationReport:
    rep = VerificationReport(f"superadd-{cls_name}", source.label)
    cls = graph_class(cls_name)
    for name in cls.forbidden:
        if has_complete_bipartite_spanning_subgraph(_forbidden_graph(name)):
            rep.fail(write_graph6(_forbidden_graph(name)), problem=f"{name} has a complete bipartite spanning subgraph")
    table = extremal_table(class_blocks(source, cls_name))
    rep.table = table
    extremal = {r["omega"]: r for r in table}
    joins = []
    for w1, w2 in omega_pairs:
        if w1 not in extremal or w2 not in extremal:
            rep.fail("", problem=f"no catalog member with omega {w1 if w1 not in extremal else w2}")
            continue
        G1, G2 = parse_graph6(extremal[w1]["witness_graph6"]), parse_graph6(extremal[w2]["witness_graph6"])
        J = join(G1, G2)
        rep.checked += 1
        k = chromatic_number(J, cross_check=True)[0]
        om = clique_number(J)
        member = J in cls
        c1, c2 = extremal[w1]["max_chi"], extremal[w2]["max_chi"]
        joins.append({"omega1": w1, "omega2": w2, "graph6": write_graph6(J), "chi": k, "omega": om, "in_class": member})
        if not member or k != c1 + c2 or om != w1 + w2:
            rep.fail(write_graph6(J), omega=om, chi=k, expected_chi=c1 + c2, expected_omega=w1 + w2, in_class=member)
    rep.extra["joins"] = joins
    return rep


def verify_prime_banner_dichotomy(source: CatalogSource) -> VerificationReport:
    rep = VerificationReport("dichotomy", source.label)
    summary = []
    for name in ("P5-banner", "oddhole-banner"):
        for b in class_blocks(source, name):
            if not len(b):
                continue
            hyp = b.restrict(b.prime & (b.alpha >= 3))
            rep.checked += len(hyp)
            summary.append({"class": name, "n": b.n, "members": len(b), "prime_alpha3": len(hyp)})
            if len(hyp):
                for i in np.flatnonzero(~hyp.perfect):
                    rep.fail(hyp.graph6(i), klass=name, problem="prime, alpha >= 3, not perfect")
    rep.extra["counts"] = summary
    return rep


def weight_grid(n: int, seed: int = GRID_SEED) -> list[tuple[int, ...]]:
    """All of {0,1,2}^n for n <= 6; otherwise 64 seeded vectors with entries 0..4."""
    if n <= 6:
        return list(product(range(3), repeat=n))
    rng = random.Random(seed * 100 + n)
    return [tuple(rng.randint(0, 4) for _ in range(n)) for _ in range(GRID_SAMPLES)]


def _restrict(q, mask):
    return tuple(x if mask >> u & 1 else 0 for u, x in enumerate(q))


def superadditive_closure(g: dict[int, int], top: int) -> list[int]:
    """Least f >= g on 1..top with f(a + b) >= f(a) + f(b); f[0] = 0."""
    f = [0] * (top + 1)
    for w in range(1, top + 1):
        f[w] = max([g.get(w, 0)] + [f[a] + f[w - a] for a in range(1, w)])
    return f


def check_decomposition(G: Graph, q: Sequence[int], sep=None) -> tuple[list[str], list[tuple[int, int]], tuple[int, int]]:
    """Problems found for one (G, q); also the (omega, chi) of each quotient and of (G, q)."""
    problems = []
    k = weighted_chi(G, q)
    om = clique_number_weighted(G, q)
    if sep is not None:
        s1, s2 = induced(G, sep.side1), induced(G, sep.side2)
        q1 = [q[u] for u in bits(sep.side1)]
        q2 = [q[u] for u in bits(sep.side2)]
        if k != max(weighted_chi(s1, q1), weighted_chi(s2, q2)):
            problems.append("chi_q differs from the max over the separator sides")
        if om != max(clique_number_weighted(s1, q1), clique_number_weighted(s2, q2)):
            problems.append("omega_q differs from the max over the separator sides")
    bases = []
    try:
        dec = decompose_qp4(G, q, check_precondition=False)
    except DecompositionError as e:
        return problems + [f"decomposition failed: {e}"], bases, (om, k)
    total = 0
    qm = dec.minimal_weights
    if weighted_chi(G, qm) != k or not is_weight_minimal(G, qm):
        problems.append("minimalized weights are not minimal with equal chi_q")
    for p in dec.parts:
        if not any(q):
            break
        part_q = _restrict(q, p.vertices)
        part_chi = weighted_chi(G, part_q)
        total += part_chi
        ki, wi = weighted_chi(G, p.weights), clique_number_weighted(G, p.weights)
        bases.append((wi, ki))
        if part_chi != ki:
            problems.append("chi_q of a part differs from chi of its reduced weights")
        if clique_number_weighted(G, part_q) < wi:
            problems.append("omega_q of a part is below omega of its reduced weights")
        if clique_number_weighted(G, _restrict(qm, p.vertices)) != wi:
            problems.append("omega of a part under minimal weights differs from its reduced weights")
        if not is_weight_minimal(G, p.weights):
            problems.append("reduced weights are not minimal")
        if not is_expansion_of_quotient(G, p):
            problems.append("part is not a clique expansion of its quotient")
    if total != k:
        problems.append(f"sum of part chi_q {total} != chi_q {k}")
    return problems, bases, (om, k)


def verify_decomposition_lemmas(source: CatalogSource, seed: int = GRID_SEED) -> VerificationReport:
    rep = VerificationReport("3.x", source.label)
    rep.extra["grid"] = {"exhaustive_up_to_n": 6, "entries": [0, 1, 2], "samples": GRID_SAMPLES,
                         "sample_entries": [0, 4], "seed": seed}
    pairs_seen: list[tuple[int, int, str, list[int]]] = []
    base_max: dict[int, int] = {}
    trichotomy_checks = 0
    qf = {"P4": path_graph(4), "K1": empty_graph(1), "2K1": empty_graph(2)}
    qf_graphs = {name: build_qf(F) for name, F in qf.items()}
    for b in source.blocks():
        if b.n > 16:
            continue
        keep = ~b.contains(QP4)
        for i in np.flatnonzero(keep):
            G = b.graph(i)
            g6 = write_graph6(G)
            connected = is_connected(G)
            sep = find_clique_separator_of_modules(G) if connected and G.n > 1 else None
            if sep is not None:
                try:
                    sep.check(G)
                except ValueError as e:
                    rep.fail(g6, problem=f"invalid separator: {e}")
                    sep = None
            if connected:
                for name, F in qf.items():
                    if find_induced(G, qf_graphs[name]) is not None:
                        continue
                    for M in range(1, 1 << G.n):
                        if is_module(G, M):
                            trichotomy_checks += 1
                            try:
                                module_trichotomy(G, F, M)
                            except (TrichotomyViolation, PreconditionError) as e:
                                rep.fail(g6, F=name, module=list(bits(M)), problem=str(e))
            for q in weight_grid(G.n, seed):
                rep.checked += 1
                problems, bases, (om, k) = check_decomposition(G, q, sep)
                for p in problems:
                    rep.fail(g6, weights=list(q), problem=p)
                for wi, ki in bases:
                    base_max[wi] = max(base_max.get(wi, 0), ki)
                if any(q):
                    pairs_seen.append((om, k, g6, list(q)))
    top = max([w for w, _, _, _ in pairs_seen], default=0)
    f = superadditive_closure(base_max, top)
    for om, k, g6, q in pairs_seen:
        if k > f[om]:
            rep.fail(g6, weights=q, problem=f"chi_q {k} exceeds transfer bound {f[om]} at omega_q {om}")
    rep.extra["trichotomy_checks"] = trichotomy_checks
    rep.extra["transfer_function"] = f[1:]
    rep.table = [{"omega": w, "max_chi": c, "witness_graph6": ""} for w, c in sorted(base_max.items())]
    return rep


# --------------------------------------------------------------------------
# dispatch

THEOREM_IDS = ("1.2i", "1.2ii", "1.2iii", "1.2iv", "1.3i", "1.3ii", "1.3iii", "1.3iv",
               "1.4", "2.3", "3.x", "superadd", "dichotomy")


def run_theorem(theorem: str, source: CatalogSource) -> list[VerificationReport]:
    if theorem in REDUCTIONS:
        return [verify_thm12_reductions(theorem, source)]
    if theorem == "1.2iv":
        return [verify_thm12_iv(source)]
    if theorem in CRITICAL_CLASSES:
        return [verify_thm13(theorem, source)]
    if theorem == "1.4":
        return [verify_cor14(source)]
    if theorem == "2.3":
        return [verify_c5_closed_form()]
    if theorem == "3.x":
        return [verify_decomposition_lemmas(source)]
    if theorem == "superadd":
        return [verify_superadditivity(name, source) for name in ("3K1", "2K2", "C5-3K1")]
    if theorem == "dichotomy":
        return [verify_prime_banner_dichotomy(source)]
    raise KeyError(f"unknown theorem id {theorem!r}; known: {', '.join(THEOREM_IDS)}")


def survey(source: CatalogSource, cls_name: str) -> VerificationReport:
    """Extremal table only: omega -> max chi over the class members of the source."""
    rep = VerificationReport(f"survey-{cls_name}", source.label)
    blocks = class_blocks(source, cls_name)
    rep.checked = sum(len(b) for b in blocks)
    rep.table = extremal_table(blocks)
    return rep
