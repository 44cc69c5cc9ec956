import json
import random
from itertools import product

import networkx as nx
import numpy as np
import pytest

from chiforge import harness as hz
from chiforge import labeled as L
from chiforge.coloring import BudgetExceeded, chi, clique_number, independence_number, is_critical, p5c4_bound
from chiforge.decompose import is_prime
from chiforge.graph import (
    complete_graph,
    cycle_graph,
    expansion,
    is_connected,
    max_degree,
    parse_graph6,
    path_graph,
    write_graph6,
)
from chiforge.harness import (
    Block,
    CatalogSource,
    VerificationReport,
    enumerate_labeled,
    isomorphism_class_codes,
    recognize_clique_expansion,
    run_theorem,
    superadditive_closure,
    survey,
    weight_grid,
    worker_count,
)
from chiforge.patterns import CLASSES, ZOO

from oracles import brute_chi, brute_omega, brute_perfect, to_nx


def test_enumerate_labeled_counts():
    assert sum(1 for _ in enumerate_labeled(1)) == 1
    assert sum(1 for _ in enumerate_labeled(3)) == 8
    assert sum(1 for _ in enumerate_labeled(6)) == 32768
    assert next(enumerate_labeled(4)).num_edges == 0
    with pytest.raises(BudgetExceeded):
        next(enumerate_labeled(8))


def test_isomorphism_class_counts():
    # numbers of unlabeled graphs on 1..7 vertices
    assert [len(isomorphism_class_codes(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]
    ext = isomorphism_class_codes(8)
    assert len(ext) == len(np.unique(ext)) and len(ext) > 12346
    with pytest.raises(BudgetExceeded):
        isomorphism_class_codes(9)


def test_extension_catalog_covers_every_class_sampled():
    """Every random 8-vertex graph is isomorphic to some member of the n=8 catalog."""
    ext = set(map(int, isomorphism_class_codes(8)))
    rng = random.Random(8)
    for _ in range(40):
        g = nx.gnp_random_graph(8, rng.random(), seed=rng.randint(0, 10**6))
        # relabel so that vertex 7 is last and the rest follow the 7-vertex atlas representative
        rest = nx.convert_node_labels_to_integers(g.subgraph(range(7)))
        atlas = next(a for a in nx.graph_atlas_g() if a.number_of_nodes() == 7 and nx.is_isomorphic(a, rest))
        f = next(nx.algorithms.isomorphism.GraphMatcher(atlas, rest).isomorphisms_iter())  # atlas -> rest
        code = sum(1 << L.pair_index(*sorted((u, v))) for u, v in atlas.edges())
        code |= sum(1 << L.pair_index(a, 7) for a in range(7) if g.has_edge(f[a], 7))
        assert code in ext


def test_source_parsing():
    assert CatalogSource.parse("builtin:5") == CatalogSource("builtin", 5)
    assert CatalogSource.parse("small:8").label == "small:8"
    assert CatalogSource.parse("file:/tmp/x.g6").path == "/tmp/x.g6"
    for bad in ("builtin:x", "nope:3", "file:", "builtin:0"):
        with pytest.raises(ValueError):
            CatalogSource.parse(bad)
    with pytest.raises(BudgetExceeded):
        CatalogSource.parse("builtin:8")
    with pytest.raises(BudgetExceeded):
        CatalogSource.parse("small:9")


def test_file_source(tmp_path):
    path = tmp_path / "cat.g6"
    big = expansion(cycle_graph(5), (2, 2, 2, 1, 1))  # 8 vertices, omega 4, chi 4
    huge = expansion(cycle_graph(5), (2, 2, 2, 2, 2))  # 10 vertices, per-graph route
    path.write_text(">>graph6<<DUW\n" + write_graph6(big) + "\n" + write_graph6(huge) + "\n@\n")
    src = CatalogSource.parse(f"file:{path}")
    assert [b.n for b in src.blocks()] == [1, 5, 8, 10]
    assert [len(b) for b in src.blocks()] == [1, 1, 1, 1]
    b10 = src.blocks()[-1]
    assert b10.codes is None and list(b10.chi) == [5] and list(b10.omega) == [4]
    table = survey(src, "P5-C4").table
    assert [(r["omega"], r["max_chi"]) for r in table] == [(1, 1), (2, 3), (4, 5)]


def _sample_block(n, k, seed):
    rng = np.random.default_rng(seed)
    codes = np.unique(rng.integers(0, 1 << L.num_pairs(n), size=k, dtype=np.int64))
    return Block(n, codes)


@pytest.mark.parametrize("n", [4, 6, 7])
def test_block_invariants_match_per_graph_routines(n):
    b = _sample_block(n, 150, n)
    graphs = [b.graph(i) for i in range(len(b))]
    assert list(b.omega) == [brute_omega(G) for G in graphs]
    assert list(b.alpha) == [independence_number(G) for G in graphs]
    assert list(b.delta) == [max_degree(G) for G in graphs]
    assert list(b.chi) == [brute_chi(G) for G in graphs]
    assert list(b.connected) == [is_connected(G) for G in graphs]
    assert list(b.critical) == [is_critical(G) for G in graphs]
    assert list(b.prime) == [is_prime(G) for G in graphs]
    assert list(b.perfect) == [brute_perfect(G) for G in graphs]


@pytest.mark.parametrize("name", sorted(CLASSES))
def test_block_class_filter_matches_per_graph(name):
    b = _sample_block(7, 300, 1)
    cls = CLASSES[name]
    got = set(map(int, b.members(cls).codes))
    assert got == {int(c) for i, c in enumerate(b.codes) if b.graph(i) in cls}


def test_block_from_graphs_matches_codes():
    b = _sample_block(6, 60, 3)
    g = Block(6, None, [b.graph(i) for i in range(len(b))])
    for attr in ("omega", "alpha", "delta", "chi", "critical", "prime", "perfect", "connected"):
        assert list(getattr(g, attr)) == list(getattr(b, attr)), attr


def test_worker_count(monkeypatch):
    monkeypatch.setenv("CHIFORGE_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("CHIFORGE_THREADS", "0")
    assert worker_count() == 1
    monkeypatch.delenv("CHIFORGE_THREADS")
    assert worker_count() >= 1


def test_parallel_chunks_match_serial(monkeypatch):
    codes = L.all_codes(6)[:20_000]
    monkeypatch.setenv("CHIFORGE_THREADS", "1")
    serial = hz._map_chunks(hz._cover_chis, 6, codes)
    monkeypatch.setenv("CHIFORGE_THREADS", "2")
    assert hz._map_chunks(hz._cover_chis, 6, codes) == serial


def _automorphisms(B):
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(B), to_nx(B))
    return list(gm.isomorphisms_iter())


@pytest.mark.parametrize("name,top", [("C5", 3), ("W5", 2)])
def test_recognize_recovers_expansions(name, top):
    B = ZOO[name].graph
    autos = _automorphisms(B)
    for q in product(range(1, top + 1), repeat=B.n):
        got = recognize_clique_expansion(expansion(B, q))
        want = min(tuple(q[f[b]] for b in range(B.n)) for f in autos)
        assert got == (name, want)


def test_recognize_rejects_other_graphs():
    assert recognize_clique_expansion(complete_graph(5)) is None
    assert recognize_clique_expansion(cycle_graph(6)) is None
    assert recognize_clique_expansion(path_graph(4)) is None
    assert recognize_clique_expansion(expansion(cycle_graph(5), (1, 0, 1, 1, 1))) is None
    # a relabelled C5 is still recognized
    assert recognize_clique_expansion(parse_graph6("DUW")) == ("C5", (1,) * 5)


def test_weight_grid():
    assert len(weight_grid(3)) == 27 and weight_grid(3)[0] == (0, 0, 0)
    g7 = weight_grid(7)
    assert len(g7) == 64 and all(0 <= x <= 4 for q in g7 for x in q)
    assert weight_grid(7) == g7 and weight_grid(7, seed=1) != g7


def test_superadditive_closure():
    f = superadditive_closure({1: 1, 2: 3}, 5)
    assert f == [0, 1, 3, 4, 6, 7]
    for a in range(1, 5):
        for b in range(1, 6 - a):
            assert f[a + b] >= f[a] + f[b]


def test_report_formats_and_merge(tmp_path):
    a = VerificationReport("x", "builtin:3", 2, [{"graph6": "B", "v": 2}], [{"omega": 1, "max_chi": 1, "witness_graph6": "@"}])
    b = VerificationReport("x", "builtin:3", 3, [{"graph6": "A", "v": 1}], [{"omega": 1, "max_chi": 2, "witness_graph6": "A_"},
                                                                             {"omega": 2, "max_chi": 2, "witness_graph6": "A_"}])
    ab, ba = a.merge(b), b.merge(a)
    assert ab.dumps() == ba.dumps()
    assert ab.checked == 5 and [f["graph6"] for f in ab.failures] == ["A", "B"]
    assert [(r["omega"], r["max_chi"]) for r in ab.table] == [(1, 2), (2, 2)]
    assert ab.to_csv() == "omega,max_chi,witness_graph6\n1,2,A_\n2,2,A_\n"
    data = json.loads(ab.dumps())
    assert {"theorem", "checked", "failures", "table"} <= set(data) and data["passed"] is False
    jp, cp = ab.write(tmp_path)
    assert jp.name == "report-x.json" and cp.read_text() == ab.to_csv()


def test_small_runs_pass_and_are_deterministic():
    src = CatalogSource.parse("builtin:5")
    for theorem in hz.THEOREM_IDS:
        if theorem in ("2.3", "3.x"):
            continue
        first = run_theorem(theorem, src)
        assert all(r.passed for r in first), theorem
        assert [r.dumps() for r in first] == [r.dumps() for r in run_theorem(theorem, src)]
    with pytest.raises(KeyError):
        run_theorem("9.9", src)


def test_p5c4_table_small():
    rep = run_theorem("1.2iv", CatalogSource.parse("builtin:5"))[0]
    assert [(r["omega"], r["max_chi"]) for r in rep.table] == [(1, 1), (2, 3), (3, 3), (4, 4), (5, 5)]
    assert [t["chi"] for t in rep.extra["tight"]] == [p5c4_bound(w) for w in range(1, 7)]


def test_reduction_report_has_limitation_note():
    for theorem in hz.REDUCTIONS:
        rep = run_theorem(theorem, CatalogSource.parse("builtin:5"))[0]
        assert hz.REDUCTION_NOTE in rep.notes and rep.extra["per_n"]


def test_tables_monotone_in_catalog_size():
    def table(n):
        return {r["omega"]: r["max_chi"] for r in survey(CatalogSource.parse(f"builtin:{n}"), "P5-banner").table}

    small, large = table(5), table(6)
    assert all(large[w] >= c for w, c in small.items())


def test_failures_refail_in_isolation(monkeypatch, tmp_path):
    # a deliberately wrong bound (chi <= omega) makes the imperfect members fail
    monkeypatch.setattr(hz, "p5c4_bound", lambda w: w)
    rep = hz.verify_thm12_iv(CatalogSource.parse("builtin:6"), tight_omegas=())
    assert not rep.passed
    witnesses = sorted({f["graph6"] for f in rep.failures})
    path = tmp_path / "witnesses.g6"
    path.write_text("\n".join(witnesses) + "\n")
    again = hz.verify_thm12_iv(CatalogSource.parse(f"file:{path}"), tight_omegas=())
    assert sorted(f["graph6"] for f in again.failures) == witnesses
    assert all(chi(parse_graph6(w)) > clique_number(parse_graph6(w)) for w in witnesses)


def test_decomposition_lemmas_small_catalog():
    rep = hz.verify_decomposition_lemmas(CatalogSource.parse("small:4"))
    assert rep.passed and rep.checked == sum(3 ** n * k for n, k in zip(range(1, 5), [1, 2, 4, 11]))
    assert rep.extra["trichotomy_checks"] > 0
