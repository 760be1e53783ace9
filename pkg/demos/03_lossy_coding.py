"""
Maximum matching as lossy coding
================================

Compression drops one bit whenever some size fails to be isolated.  By
pigeonhole some input must fail the round trip, and every such input
encodes weights that isolate a maximum matching.
"""

from clmatch import BipartiteGraph, LossyInstance, a2_extract, lossy_comp, lossy_decomp, lossy_solve

G = BipartiteGraph(2, ((0, 0), (0, 1), (1, 1)))
inst = LossyInstance(G)
print(f"{inst.input_bits}-bit inputs, {inst.output_bits}-bit outputs")

# %% one compressible input, one that is not
for W in ([3, 3, 3], [1, 2, 4]):
    x = inst.encode(W)
    y = lossy_comp(inst, x)
    back = lossy_decomp(inst, y)
    print(f"weights {W}: x={x} y={y} round trip {'ok' if back == x else 'FAILS'}")

# %% exhaustive census
fail = 0
for i in range(1 << inst.input_bits):
    x = format(i, f"0{inst.input_bits}b")
    if lossy_decomp(inst, lossy_comp(inst, x)) != x:
        fail += 1
print(f"{fail} of {1 << inst.input_bits} inputs fail the round trip")

# %% the solver
res = lossy_solve(inst, "exhaustive")
print("witness:", res.witness, "weights:", inst.decode(res.witness))
print("maximum matching:", G.pairs(a2_extract(G, res.witness)))
