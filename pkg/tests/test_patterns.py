import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chiforge.graph import (
    Graph,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    empty_graph,
    induced,
    path_graph,
)
from chiforge.patterns import (
    CLASSES,
    QP4,
    ZOO,
    build_qf,
    find_induced,
    find_induced_cycle,
    graph_class,
    has_complete_bipartite_spanning_subgraph,
    has_odd_hole,
    is_class_member,
    is_isomorphic,
    is_perfect,
    isomorphism,
    pattern,
)

from oracles import brute_perfect, random_graph, to_nx
from test_graph import graphs

# (vertices, edges, degree sequence) read off the standard drawings
ZOO_SHAPES = {
    "3K1": (3, 0, [0, 0, 0]),
    "2K2": (4, 2, [1, 1, 1, 1]),
    "C4": (4, 4, [2, 2, 2, 2]),
    "paw": (4, 4, [3, 2, 2, 1]),
    "banner": (5, 5, [3, 2, 2, 2, 1]),
    "cobanner": (5, 5, [3, 2, 2, 2, 1]),
    "bull": (5, 5, [3, 3, 2, 1, 1]),
    "C5": (5, 5, [2, 2, 2, 2, 2]),
    "gem": (5, 7, [4, 3, 3, 2, 2]),
    "P5": (5, 4, [2, 2, 2, 1, 1]),
    "paraglider": (5, 7, [3, 3, 3, 3, 2]),
    "W5": (6, 10, [5, 3, 3, 3, 3, 3]),
    "P4": (4, 3, [2, 2, 1, 1]),
}


def test_zoo_is_exactly_the_named_set():
    assert set(ZOO) == set(ZOO_SHAPES)


@pytest.mark.parametrize("name", sorted(ZOO_SHAPES))
def test_zoo_shapes(name):
    n, m, degs = ZOO_SHAPES[name]
    G = ZOO[name].graph
    assert (G.n, G.num_edges, G.degree_sequence()) == (n, m, degs)


def test_zoo_structure():
    # banner: a 4-cycle with a pendant; cobanner: a triangle with a pendant path of length 2
    assert find_induced(ZOO["banner"].graph, cycle_graph(4)) is not None
    assert find_induced(ZOO["cobanner"].graph, cycle_graph(4)) is None
    assert find_induced(ZOO["cobanner"].graph, ZOO["paw"].graph) is not None
    assert find_induced(ZOO["cobanner"].graph, path_graph(4)) is not None
    assert is_isomorphic(complement(ZOO["bull"].graph), ZOO["bull"].graph)
    assert is_isomorphic(complement(ZOO["gem"].graph), Graph.from_edges(5, [(0, 1), (1, 2), (2, 3)]))
    assert is_isomorphic(complement(ZOO["paraglider"].graph),
                         Graph.from_edges(5, [(0, 1), (2, 3), (3, 4)]))
    assert is_isomorphic(ZOO["paw"].graph, complement(Graph.from_edges(4, [(0, 1), (1, 2)])))


def test_pattern_names():
    assert pattern("co-banner").name == "cobanner"
    assert pattern("K{2,3}").graph == complete_bipartite(2, 3)
    assert pattern("K4").graph == complete_graph(4)
    with pytest.raises(KeyError):
        pattern("dodecahedron")


def test_find_induced_examples():
    assert find_induced(path_graph(5), ZOO["3K1"]) == [0, 2, 4]
    assert find_induced(cycle_graph(5), ZOO["3K1"]) is None
    assert find_induced(ZOO["banner"].graph, ZOO["C4"]) == [1, 2, 3, 4]
    assert find_induced(empty_graph(2), complete_graph(3)) is None


def _nx_has_induced(G, H):
    gm = nx.algorithms.isomorphism.GraphMatcher(to_nx(G), to_nx(H))
    return gm.subgraph_is_isomorphic()


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=8), st.sampled_from(sorted(ZOO_SHAPES)))
def test_find_induced_matches_networkx(G, name):
    H = ZOO[name].graph
    w = find_induced(G, H)
    assert (w is not None) == _nx_has_induced(G, H)
    if w is not None:
        assert is_isomorphic(induced(G, w), H)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=8), st.sampled_from(["P4", "C4", "paw", "bull"]))
def test_freeness_is_hereditary(G, name):
    H = ZOO[name].graph
    if find_induced(G, H) is None:
        for v in range(G.n):
            S = [u for u in range(G.n) if u != v]
            assert find_induced(induced(G, S), H) is None


def test_isomorphism_map():
    G = cycle_graph(5)
    H = complement(G)
    f = isomorphism(G, H)
    assert f is not None
    for u, v in combinations(range(5), 2):
        assert H.has_edge(u, v) == G.has_edge(f[u], f[v])
    assert isomorphism(G, path_graph(5)) is None


def test_build_qf():
    assert build_qf(empty_graph(1)) == path_graph(4)
    Q = build_qf(empty_graph(2))
    assert Q.n == 5 and is_isomorphic(Q, ZOO["banner"].graph)
    assert is_isomorphic(induced(Q, [1, 2, 4, 3]), cycle_graph(4))
    assert QP4.n == 7
    assert find_induced(QP4, ZOO["banner"]) is not None
    assert find_induced(QP4, ZOO["C4"]) is not None
    with pytest.raises(ValueError):
        build_qf(empty_graph(0))


def test_banner_or_c4_free_implies_qp4_free():
    rng = random.Random(11)
    for _ in range(300):
        G = random_graph(rng, rng.randint(5, 9), rng.choice([0.4, 0.6, 0.8]))
        if find_induced(G, QP4) is not None:
            assert find_induced(G, ZOO["banner"]) is not None
            assert find_induced(G, ZOO["C4"]) is not None


def test_odd_holes():
    assert sorted(has_odd_hole(cycle_graph(5))) == [0, 1, 2, 3, 4]
    assert len(has_odd_hole(cycle_graph(7))) == 7
    assert has_odd_hole(complete_bipartite(3, 4)) is None
    assert has_odd_hole(cycle_graph(6)) is None
    assert find_induced_cycle(cycle_graph(6), [6]) is not None
    assert has_odd_hole(complement(cycle_graph(7))) is None  # antihole, not a hole


def _nx_induced_cycle_lengths(G):
    """Chordless cycle lengths, from networkx's enumerator (independent code path)."""
    return {len(c) for c in nx.chordless_cycles(to_nx(G)) if len(c) >= 3}


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=9))
def test_odd_hole_matches_networkx(G):
    w = has_odd_hole(G)
    lengths = _nx_induced_cycle_lengths(G)
    assert (w is not None) == any(k >= 5 and k % 2 for k in lengths)
    if w is not None:
        H = induced(G, w)
        assert is_isomorphic(H, cycle_graph(len(w)))
        assert all(G.has_edge(w[i], w[(i + 1) % len(w)]) for i in range(len(w)))


def test_is_perfect_examples():
    assert is_perfect(path_graph(4))
    assert not is_perfect(cycle_graph(5))
    assert is_perfect(cycle_graph(6)) == brute_perfect(cycle_graph(6))
    assert not is_perfect(complement(cycle_graph(7)))


def test_is_perfect_matches_definition():
    rng = random.Random(5)
    for _ in range(120):
        G = random_graph(rng, rng.randint(1, 7), rng.random())
        assert is_perfect(G) == brute_perfect(G)


def test_class_membership():
    assert is_class_member(cycle_graph(5), "P5-C4")
    assert is_class_member(ZOO["W5"].graph, "P5,C4")
    assert not is_class_member(path_graph(5), "3K1")
    assert not is_class_member(cycle_graph(5), "C5-3K1")
    assert not is_class_member(cycle_graph(7), "oddhole-banner")
    assert CLASSES["oddhole-banner"].violation(cycle_graph(7))[0] == "odd-hole"
    with pytest.raises(KeyError):
        graph_class("planar")


def test_complete_bipartite_spanning_subgraph():
    assert has_complete_bipartite_spanning_subgraph(complete_bipartite(2, 3))
    assert has_complete_bipartite_spanning_subgraph(cycle_graph(4))
    for name in ("3K1", "2K2", "C5"):
        assert not has_complete_bipartite_spanning_subgraph(ZOO[name].graph)
