import numpy as np
import pytest

from clmatch.errors import InputError
from clmatch.generators import FAMILIES, GeneratorSpec, all_bipartite_graphs, generate, graph_from_mask
from clmatch.graph import BipartiteGraph
from clmatch.oracles import (all_matchings, brute_force_matchings, hopcroft_karp, max_matching_size,
                             oracle_is_isolating, oracle_min_matching)

K22 = BipartiteGraph.complete(2)


def test_brute_force_counts():
    rep = brute_force_matchings(K22)
    assert rep.max_size == 2 and rep.count_by_size == {0: 1, 1: 4, 2: 2}
    assert brute_force_matchings(BipartiteGraph(3)).max_size == 0
    assert brute_force_matchings(BipartiteGraph.complete(3)).count_by_size[3] == 6
    assert brute_force_matchings(BipartiteGraph.complete(4)).count_by_size[4] == 24


def test_enumeration_bound():
    with pytest.raises(InputError):
        next(all_matchings(BipartiteGraph.complete(9)))


def test_isolation_oracle():
    assert oracle_is_isolating(K22, 2, [1, 2, 4, 8])
    assert not oracle_is_isolating(K22, 1, [5, 5, 5, 5])
    assert not oracle_is_isolating(BipartiteGraph(2, ((0, 0),)), 2, [0])
    assert oracle_min_matching(K22, 2, [1, 2, 3, 5]) == frozenset({1, 2})
    assert oracle_min_matching(K22, 1, [5, 5, 5, 5]) is None


def test_report_dict():
    d = brute_force_matchings(K22, [1, 2, 3, 5]).to_dict()
    assert d["max_size"] == 2 and d["min_weight"]["2"] == 5 and d["isolating"]["1"]


def test_hopcroft_karp_agrees():
    path = BipartiteGraph(2, ((0, 0), (1, 0), (1, 1)))
    assert len(hopcroft_karp(K22)) == 2 and len(hopcroft_karp(path)) == 2
    rng = np.random.default_rng(0)
    for _ in range(300):
        n = int(rng.integers(1, 7))
        keep = rng.random((n, n)) < rng.random()
        G = BipartiteGraph(n, tuple((u, v) for u in range(n) for v in range(n) if keep[u, v]))
        assert len(hopcroft_karp(G)) == max_matching_size(G)


def test_exhaustive_small():
    graphs = list(all_bipartite_graphs(2))
    assert len(graphs) == 16 and len(set(graphs)) == 16
    assert graph_from_mask(2, 15) == K22
    G, _ = generate(GeneratorSpec("exhaustive-small", 2, seed=9))
    assert G == graph_from_mask(2, 9)
    with pytest.raises(InputError):
        graph_from_mask(2, 16)


def test_complete_all_equal():
    G, t = generate(GeneratorSpec("complete", 2, weight_mode="all-equal", seed=1))
    assert G == K22 and len(set(t.read_weights())) == 1


@pytest.mark.parametrize("family", FAMILIES)
def test_determinism(family):
    spec = GeneratorSpec(family, 3, seed=7)
    (G1, t1), (G2, t2) = generate(spec), generate(spec)
    assert G1 == G2 and np.array_equal(t1.bits, t2.bits) and t1.restore_check()


def test_family_shapes():
    assert generate(GeneratorSpec("star", 3))[0].edges == ((0, 0), (0, 1), (0, 2))
    assert generate(GeneratorSpec("path", 3))[0].num_edges == 5
    G, t = generate(GeneratorSpec("crafted-nonisolating", 4, seed=2))
    assert G.num_edges >= 2 and len(set(t.read_weights())) == 1


def test_generator_errors():
    with pytest.raises(InputError):
        GeneratorSpec("nope", 2)
    with pytest.raises(InputError):
        GeneratorSpec("complete", 2, weight_mode="nope")
    with pytest.raises(InputError):
        generate(GeneratorSpec("complete", 4, weight_mode="distinct-powers"))
