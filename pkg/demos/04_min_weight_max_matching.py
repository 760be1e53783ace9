"""
Minimum-weight maximum matching
===============================

Input weights are scaled above anything the tape can contribute, so the
tape only breaks ties among matchings of equal input weight.
"""

import numpy as np

from clmatch import BipartiteGraph, init_tape, min_weight_max_matching
from clmatch.oracles import brute_force_matchings
from clmatch.tape import TapeLayout

G = BipartiteGraph.complete(2)
W = [1, 1, 1, 10]
M, total, report = min_weight_max_matching(G, W, init_tape(TapeLayout.for_graph(G), seed=0))
print("K2,2 with weights", W, "->", G.pairs(M), "weight", total, "restored", report.tape_restored)

# %% a few random instances against enumeration
rng = np.random.default_rng(1)
for i in range(5):
    n = int(rng.integers(2, 5))
    keep = rng.random((n, n)) < 0.6
    H = BipartiteGraph(n, tuple((u, v) for u in range(n) for v in range(n) if keep[u, v]))
    Wr = [int(w) for w in rng.integers(0, 10, size=H.num_edges)]
    M, total, _ = min_weight_max_matching(H, Wr, init_tape(TapeLayout.for_graph(H), seed=i))
    rep = brute_force_matchings(H, Wr)
    print(f"n={n} |E|={H.num_edges}: got ({len(M)}, {total}), oracle ({rep.max_size}, {rep.min_weight[rep.max_size]})")
