"""
Isolation, residual graphs and threshold edges
==============================================

Two routes to the unique minimum matching of size k, the residual graph
that tests the next size, and the threshold edge whose weight can be
rebuilt from the others.
"""

from clmatch import BipartiteGraph, build_residual, extract_isolated_size_k, find_threshold_edge, recover_weight
from clmatch.isolation import extend_to_perfect
from clmatch.oracles import brute_force_matchings

G = BipartiteGraph.complete(2)
W = [1, 2, 3, 5]  # (0,0) (0,1) (1,0) (1,1)

# %% padding to a perfect matching problem
ext = extend_to_perfect(G, 1, W)
print(f"size-1 matchings of K2,2 become perfect matchings of a {ext.size}x{ext.size} graph")
print("scale on original weights:", ext.scale)
for (i, j), w, o in zip(ext.edges, ext.weights, ext.origin):
    print(f"  {i}-{j} weight {w}" + ("" if o is None else f"  (edge {G.edges[o]})"))

# %% both backends against enumeration
for k in range(3):
    a = extract_isolated_size_k(G, k, W, "mvv")
    b = extract_isolated_size_k(G, k, W, "combinatorial")
    truth = brute_force_matchings(G, W).argmins[k]
    print(f"k={k}: determinant {G.pairs(a)}  enumeration {G.pairs(b)}  oracle {[G.pairs(m) for m in truth]}")

# %% the residual graph of M^1
M1 = extract_isolated_size_k(G, 1, W)
print(build_residual(G, M1, W).dump())
print("threshold edge for size 2:", find_threshold_edge(G, M1, W))

# %% equal weights: a threshold edge appears and its weight is recoverable
flat = [4, 4, 4, 4]
e = find_threshold_edge(G, frozenset(), flat)
print("equal weights, threshold edge:", G.edges[e])
erased = list(flat)
erased[e] = 0
print("recovered weight:", recover_weight(G, 0, erased, e))
