import numpy as np
import pytest

from clmatch.driver import DriverConfig
from clmatch.errors import InputError
from clmatch.extensions import CombinedWeights, assignment_min_weight_max_matching, min_weight_max_matching
from clmatch.generators import random_graph
from clmatch.graph import BipartiteGraph
from clmatch.oracles import brute_force_matchings
from clmatch.tape import TapeLayout, init_tape

K22 = BipartiteGraph.complete(2)


def test_k22_example():
    W = [1, 1, 1, 10]
    t = init_tape(TapeLayout.for_graph(K22), seed=4)
    M, total, report = min_weight_max_matching(K22, W, t)
    assert K22.pairs(M) == [(0, 1), (1, 0)] and total == 2 and report.tape_restored


def test_zero_objective():
    t = init_tape(TapeLayout.for_graph(K22))
    M, total, report = min_weight_max_matching(K22, [0] * 4, t)
    assert len(M) == 2 and total == 0 and report.tape_restored


def test_combined_scale_dominates():
    c = CombinedWeights.for_tape(K22, [0, 1, 0, 0], 6)
    assert c.scale == 4 * 63 + 1
    assert c.combine([63, 0, 63, 63]) == [63, c.scale, 63, 63]
    with pytest.raises(InputError):
        CombinedWeights.for_tape(K22, [0, -1, 0, 0], 6)
    with pytest.raises(InputError):
        CombinedWeights.for_tape(K22, [0, 1], 6)


def test_assignment_fallback_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(300):
        G = random_graph(int(rng.integers(1, 5)), float(rng.random()), rng)
        W = [int(w) for w in rng.integers(0, 20, size=G.num_edges)]
        rep = brute_force_matchings(G, W)
        M = assignment_min_weight_max_matching(G, W)
        assert len(M) == rep.max_size and G.weight(M, W) == rep.min_weight[rep.max_size]


def test_forced_fallback_uses_weighted_solver():
    t = init_tape(TapeLayout.for_graph(K22))
    M, total, report = min_weight_max_matching(K22, [1, 1, 1, 10], t, DriverConfig(force_fallback=True))
    assert report.fallback_used and total == 2
