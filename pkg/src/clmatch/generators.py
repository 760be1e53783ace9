"""Deterministic instance generators for tests, demos and the CLI."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import BipartiteGraph
from .tape import CatalyticTape, TapeLayout

FAMILIES = ("random-gnp", "complete", "path", "star", "crafted-nonisolating", "exhaustive-small")
WEIGHT_MODES = ("tape-random", "all-equal", "distinct-powers")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    p: float = 0.5
    weight_mode: str = "tape-random"
    seed: int = 0
    weight_bits: int | None = None
    num_reserves: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InputError(f"unknown family {self.family!r}")
        if self.weight_mode not in WEIGHT_MODES:
            raise InputError(f"unknown weight mode {self.weight_mode!r}")


def all_bipartite_graphs(n: int):
    """Every graph on ``n + n`` vertices, ordered by edge bitmask."""
    pairs = [(u, v) for u in range(n) for v in range(n)]
    for mask in range(1 << len(pairs)):
        yield BipartiteGraph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def graph_from_mask(n: int, mask: int) -> BipartiteGraph:
    pairs = [(u, v) for u in range(n) for v in range(n)]
    if not 0 <= mask < (1 << len(pairs)):
        raise InputError(f"mask {mask} out of range for n={n}")
    return BipartiteGraph(n, tuple(p for i, p in enumerate(pairs) if mask >> i & 1))


def random_graph(n: int, p: float, rng: np.random.Generator) -> BipartiteGraph:
    keep = rng.random((n, n)) < p
    return BipartiteGraph(n, tuple((u, v) for u in range(n) for v in range(n) if keep[u, v]))


def _graph(spec: GeneratorSpec, rng: np.random.Generator) -> BipartiteGraph:
    n = spec.n
    if spec.family == "complete":
        return BipartiteGraph.complete(n)
    if spec.family == "path":
        # L0-R0-L1-R1-...: a zig-zag path through all 2n vertices.
        edges = [(i, i) for i in range(n)] + [(i + 1, i) for i in range(n - 1)]
        return BipartiteGraph(n, tuple(edges))
    if spec.family == "star":
        return BipartiteGraph(n, tuple((0, v) for v in range(n)))
    if spec.family == "exhaustive-small":
        return graph_from_mask(n, spec.seed)
    if spec.family == "crafted-nonisolating":
        while True:
            G = random_graph(n, spec.p, rng)
            if G.num_edges >= 2:
                return G
    return random_graph(n, spec.p, rng)


def generate(spec: GeneratorSpec) -> tuple[BipartiteGraph, CatalyticTape]:
    """Build ``(G, tape)``; the same spec always yields the same instance.

    The weight fields follow ``weight_mode`` (``crafted-nonisolating``
    forces ``all-equal``); reserve slots are always random.
    """
    rng = np.random.default_rng(spec.seed)
    G = _graph(spec, rng)
    layout = TapeLayout.for_graph(G, spec.weight_bits, spec.num_reserves)
    bits = rng.integers(0, 2, size=layout.total_bits, dtype=np.uint8)
    tape = CatalyticTape(layout, bits)
    mode = "all-equal" if spec.family == "crafted-nonisolating" else spec.weight_mode
    b = layout.weight_bits
    if mode == "all-equal":
        value = int(rng.integers(0, 1 << b))
        weights = [value] * G.num_edges
    elif mode == "distinct-powers":
        if G.num_edges > b:
            raise InputError(f"{G.num_edges} distinct powers of two do not fit in {b} bits")
        weights = [1 << i for i in range(G.num_edges)]
    else:
        return G, tape
    for i, w in enumerate(weights):
        tape.write_weight(i, w)
    return G, CatalyticTape(layout, tape.bits)
