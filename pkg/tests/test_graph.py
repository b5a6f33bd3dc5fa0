from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from gapkit.errors import CapExceeded, FormatError, InvalidInstance
from gapkit.graph import (
    SimpleGraph,
    dense_q_subgraph_tree,
    densest_subgraph_bruteforce,
    graph_power,
    greedy_maximal_independent_set,
    max_clique_exact,
    max_clique_exhaustive,
    mmis_exact,
    parse_edgelist,
    power_tuple,
    supervertex_map_from_json,
    supervertex_map_to_json,
    to_edgelist,
    verify_vertex_set,
)

from .oracles import clique_number, mmis_size, to_nx


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return SimpleGraph.from_edges(n, [p for p, c in zip(pairs, chosen) if c])


def test_simple_graph_invariants():
    with pytest.raises(InvalidInstance):
        SimpleGraph.from_edges(3, [(1, 1)])
    with pytest.raises(InvalidInstance):
        SimpleGraph.from_edges(3, [(0, 3)])
    g = SimpleGraph.from_edges(3, [(1, 0), (0, 1), (2, 1)])
    assert g.edges == {(0, 1), (1, 2)}
    assert g == SimpleGraph(3, adjacency=g.adjacency)
    assert hash(g) == hash(SimpleGraph.path(3))


def test_clique_examples():
    assert max_clique_exact(SimpleGraph.complete(5)) == (5, frozenset(range(5)))
    assert max_clique_exact(SimpleGraph.empty(4))[0] == 1
    omega, witness = max_clique_exact(SimpleGraph.cycle(5))
    assert omega == 2 and max_clique_exact(SimpleGraph.cycle(5))[1] == witness
    assert max_clique_exact(SimpleGraph.empty(0)) == (0, frozenset())


def test_clique_cap():
    with pytest.raises(CapExceeded):
        max_clique_exact(SimpleGraph.empty(65))
    with pytest.raises(CapExceeded):
        max_clique_exhaustive(SimpleGraph.empty(21))


@settings(max_examples=150)
@given(graphs(12))
def test_clique_matches_networkx(g):
    omega, witness = max_clique_exact(g)
    assert omega == clique_number(g)
    assert len(witness) == omega and verify_vertex_set(g, witness, "clique").ok
    assert max_clique_exhaustive(g) == omega


def test_clique_deterministic_on_larger_graph():
    g = nx.gnp_random_graph(60, 0.5, seed=4)
    ours = SimpleGraph.from_edges(60, g.edges)
    assert max_clique_exact(ours) == max_clique_exact(ours)
    assert max_clique_exact(ours)[0] == max(len(c) for c in nx.find_cliques(g))


def test_power_examples():
    c5 = SimpleGraph.cycle(5)
    assert graph_power(c5, 1) == c5
    k9 = graph_power(SimpleGraph.complete(3), 2)
    assert k9 == SimpleGraph.complete(9)
    assert max_clique_exact(graph_power(c5, 2))[0] == 4


def test_power_is_strong_product():
    h = SimpleGraph.path(4)
    p = graph_power(h, 2)
    ref = nx.strong_product(to_nx(h), to_nx(h))
    index = {(a, b): 4 * a + b for a in range(4) for b in range(4)}
    assert p.edges == {tuple(sorted((index[u], index[v]))) for u, v in ref.edges}


def test_power_tuple_lexicographic():
    assert [power_tuple(i, 3, 2) for i in range(4)] == [(0, 0), (0, 1), (0, 2), (1, 0)]


def test_power_cap():
    with pytest.raises(CapExceeded):
        graph_power(SimpleGraph.empty(5), 6)


@settings(max_examples=40)
@given(graphs(5), st.integers(1, 3))
def test_power_multiplies_clique_number(h, k):
    if h.n == 0:
        return
    assert clique_number(graph_power(h, k)) == clique_number(h) ** k


def test_power_with_isolated_vertices():
    h = SimpleGraph.from_edges(3, [(0, 1)])
    p = graph_power(h, 2)
    assert p.n == 9 and max_clique_exact(p)[0] == 4
    assert p.degree(8) == 0  # (2, 2) pairs only with itself


def test_verify_examples():
    assert verify_vertex_set(SimpleGraph.complete(3), {0, 1}, "clique").ok
    path = SimpleGraph.path(3)
    assert verify_vertex_set(path, {0, 2}, "maximal-independent").ok
    assert verify_vertex_set(path, {0}, "maximal-independent") == (False, 2)
    assert verify_vertex_set(path, {0, 1}, "independent") == (False, (0, 1))
    assert verify_vertex_set(path, {1}, "dominating").ok
    assert verify_vertex_set(SimpleGraph.cycle(4), {0, 2}, "clique") == (False, (0, 2))
    with pytest.raises(InvalidInstance):
        verify_vertex_set(path, {3}, "clique")


def test_mmis_examples():
    assert mmis_exact(SimpleGraph.complete(6))[0] == 1
    assert mmis_exact(SimpleGraph.empty(4)) == (4, frozenset(range(4)))
    assert mmis_exact(SimpleGraph.path(3)) == (1, frozenset({1}))
    with pytest.raises(CapExceeded):
        mmis_exact(SimpleGraph.empty(41))


@settings(max_examples=150)
@given(graphs(12))
def test_mmis_matches_enumeration(g):
    size, witness = mmis_exact(g)
    assert size == mmis_size(g) == len(witness)
    assert verify_vertex_set(g, witness, "maximal-independent").ok
    assert size <= len(greedy_maximal_independent_set(g, reversed(range(g.n))))


def test_dense_subgraph_examples():
    g = SimpleGraph.cycle(6)
    assert dense_q_subgraph_tree(g, 1).edge_count == 0
    res = dense_q_subgraph_tree(g, 3)
    assert res.edge_count == 2 and res.vertices == {0, 1, 5}
    with pytest.raises(InvalidInstance):
        dense_q_subgraph_tree(SimpleGraph.empty(3), 2)
    with pytest.raises(InvalidInstance):
        dense_q_subgraph_tree(g, 7)


@settings(max_examples=60)
@given(graphs(8), st.data())
def test_dense_subgraph_tree_spans(g, data):
    if g.n == 0 or not g.is_connected():
        return
    q = data.draw(st.integers(1, g.n))
    res = dense_q_subgraph_tree(g, q)
    assert len(res.vertices) == q and res.edge_count == q - 1
    assert q == 1 or nx.is_tree(nx.Graph(list(res.tree_edges)))
    assert all(g.has_edge(u, v) for u, v in res.tree_edges)
    best, arg = densest_subgraph_bruteforce(g, q)
    assert g.induced_edge_count(arg) == best >= res.induced_edges


def test_edgelist_roundtrip_and_errors():
    g = SimpleGraph.cycle(5)
    assert parse_edgelist(to_edgelist(g)) == g
    for bad in ("", "3\n", "3 1\n0 0\n", "3 2\n0 1\n", "3 1\n0 x\n", "3 2\n0 1\n1 0\n"):
        with pytest.raises(FormatError):
            parse_edgelist(bad)


def test_supervertex_map_json():
    smap = (frozenset({0, 1}), frozenset({2}))
    assert supervertex_map_from_json(supervertex_map_to_json(smap)) == smap
    with pytest.raises(FormatError):
        supervertex_map_from_json("[[]]")
