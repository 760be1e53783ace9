import pytest
from hypothesis import given, settings, strategies as st

from clmatch.errors import GraphTooLarge, InputError
from clmatch.graph import (BipartiteGraph, ComponentKind, classify_components, lift_index, read_graph,
                           symmetric_difference, validate_matching, write_graph, xor_apply)
from clmatch.oracles import brute_force_matchings

K22 = BipartiteGraph.complete(2)


def idx(G, *pairs):
    return frozenset(G.edge_index(u, v) for u, v in pairs)


def test_edges_sorted_and_indexed():
    G = BipartiteGraph(2, ((1, 1), (0, 1), (0, 0)))
    assert G.edges == ((0, 0), (0, 1), (1, 1))
    assert G.edge_index(1, 1) == 2
    assert G.left_adjacency == ((0, 1), (2,))


@pytest.mark.parametrize("n, edges", [(0, ()), (2, ((0, 2),)), (2, ((0, 0), (0, 0))), (2, ((-1, 0),))])
def test_bad_graphs(n, edges):
    with pytest.raises(InputError):
        BipartiteGraph(n, edges)


def test_too_large():
    with pytest.raises(GraphTooLarge):
        BipartiteGraph(17)
    assert BipartiteGraph(17, max_n=20).n == 17


def test_validate_matching_examples():
    assert validate_matching(K22, idx(K22, (0, 0), (1, 1)))
    assert not validate_matching(K22, idx(K22, (0, 0), (0, 1)))
    assert validate_matching(K22, frozenset())
    with pytest.raises(InputError):
        validate_matching(K22, {4})


def test_symmetric_difference_examples():
    M = idx(K22, (0, 0), (1, 1))
    assert symmetric_difference(M, M) == frozenset()
    assert symmetric_difference(idx(K22, (0, 0)), idx(K22, (1, 1))) == M
    assert symmetric_difference(M, idx(K22, (0, 1), (1, 1))) == idx(K22, (0, 0), (0, 1))
    with pytest.raises(InputError):
        symmetric_difference({0}, {9}, K22)


def test_xor_apply_examples():
    M = idx(K22, (0, 1))
    assert xor_apply(M, frozenset()) == M
    assert xor_apply(M, M) == frozenset()
    # Path graph L0-R0-L1-R1 with M = {(1,0)}: the whole path is augmenting.
    G = BipartiteGraph(2, ((0, 0), (1, 0), (1, 1)))
    M1 = idx(G, (1, 0))
    P = idx(G, (0, 0), (1, 0), (1, 1))
    M2 = xor_apply(M1, P, G)
    assert M2 == idx(G, (0, 0), (1, 1)) and validate_matching(G, M2)


def test_classify_examples():
    assert classify_components(K22, frozenset(), frozenset(), frozenset()) == []
    M1, M2 = idx(K22, (0, 0)), idx(K22, (0, 1))
    (c,) = classify_components(K22, M1 ^ M2, M1, M2)
    assert c.kind is ComponentKind.EVEN_PATH
    (c,) = classify_components(K22, M1, frozenset(), M1)
    assert c.kind is ComponentKind.AUGMENTING_M1
    (c,) = classify_components(K22, M1, M1, frozenset())
    assert c.kind is ComponentKind.AUGMENTING_M2
    A, B = idx(K22, (0, 0), (1, 1)), idx(K22, (0, 1), (1, 0))
    (c,) = classify_components(K22, A ^ B, A, B)
    assert c.kind is ComponentKind.EVEN_CYCLE and len(c.edges) == 4
    with pytest.raises(InputError):
        classify_components(K22, A, A, B)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.data())
def test_classification_counts_balance(n, data):
    # Over any two matchings, each M2-augmenting component adds one edge.
    G = BipartiteGraph.complete(n)
    ms = brute_force_matchings(G, keep_all=True).matchings
    M1 = data.draw(st.sampled_from(ms))
    M2 = data.draw(st.sampled_from(ms))
    comps = classify_components(G, M1 ^ M2, M1, M2)
    plus = sum(c.kind is ComponentKind.AUGMENTING_M1 for c in comps)
    minus = sum(c.kind is ComponentKind.AUGMENTING_M2 for c in comps)
    assert len(M2) - len(M1) == plus - minus
    assert frozenset().union(*[c.edges for c in comps]) == M1 ^ M2


def test_lift_index_roundtrip():
    G = BipartiteGraph.complete(3)
    for e in range(G.num_edges):
        H = G.without_edge(e)
        for i, edge in enumerate(H.edges):
            assert G.edges[lift_index(i, e)] == edge


def test_graph_text_roundtrip():
    G = BipartiteGraph(3, ((0, 2), (2, 1), (1, 1)))
    assert read_graph(write_graph(G)) == G
    assert read_graph("# comment\n2 1\n0 1\n").edges == ((0, 1),)
    for bad in ("", "2\n", "2 2\n0 0\n", "2 2\n0 0\n0 0\n", "2 1\nx y\n"):
        with pytest.raises(InputError):
            read_graph(bad)
