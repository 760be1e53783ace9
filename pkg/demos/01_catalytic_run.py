"""
A catalytic matching run, step by step
======================================

The tape below starts out all zeros, so every edge weight is equal and no
matching size is isolated.  Every reserve slot also holds zero, so each
compression writes a zero back and nothing improves: the loop uses up its
reserves, falls back to a direct algorithm and still hands the tape back
untouched.  With equal weights but random reserves, compression converges.
"""

from clmatch import BipartiteGraph, DriverConfig, init_tape, run_clp_match
from clmatch.tape import TapeLayout

G = BipartiteGraph.complete(3)
layout = TapeLayout.for_graph(G)
print(f"K3,3: {G.num_edges} weight fields of {layout.weight_bits} bits, "
      f"{layout.num_reserves} reserve slots, {layout.total_bits} tape bits")
print(f"a (k, u, v) record takes {layout.record_bits} bits, freeing {layout.padding_bits} per compression")

tape = init_tape(layout)
report = run_clp_match(G, tape, DriverConfig(record_trace=True))

# %% trace
for step in report.trace:
    if step["step"] == "check":
        print(f"  c={step['c']} k={step['k']}: {step['outcome']:<9} weights={step['weights']}")
    else:
        print(f"  {step}")

# %% outcome
print("matching:", report.edges)
print("compressions:", report.compressions, "peak freed bits:", report.freed_bits_peak)
print("fallback used:", report.fallback_used)
print("tape restored bit for bit:", report.tape_restored)

# %% equal weights, random reserves
from clmatch.generators import GeneratorSpec, generate

G2, tape = generate(GeneratorSpec("crafted-nonisolating", 3, p=1.0, seed=4, num_reserves=16))
print("weights:", tape.read_weights())
r = run_clp_match(G2, tape, DriverConfig(record_trace=True))
for step in r.trace:
    if step["step"] == "check":
        print(f"  c={step['c']} k={step['k']}: {step['outcome']:<9} weights={step['weights']}")
print(f"size {r.size}, {r.compressions} compressions, fallback={r.fallback_used}, restored={r.tape_restored}")

# %% a random tape usually isolates right away
tape = init_tape(layout, seed=11)
r = run_clp_match(G, tape)
print(f"seeded tape: size {r.size}, {r.compressions} compressions, restored={r.tape_restored}")
