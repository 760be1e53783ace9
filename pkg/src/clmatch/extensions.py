"""Minimum-weight maximum matching on top of the catalytic loop.

The algorithm runs on combined weights ``W_input * K + W_catalytic`` with
``K = |E| * (2**b - 1) + 1``.  Two matchings of equal size are then
ordered by their input weight first, whatever the tape holds, so the
isolated maximum matching is also a minimum input-weight one.
Compression only ever rewrites the catalytic part.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import linear_sum_assignment

from .driver import DriverConfig, RunReport, WeightView, run_clp_match
from .errors import InputError
from .graph import BipartiteGraph
from .tape import CatalyticTape


@dataclass(frozen=True)
class CombinedWeights:
    input_weights: tuple[int, ...]
    scale: int

    @classmethod
    def for_tape(cls, G: BipartiteGraph, input_weights: Sequence[int], weight_bits: int) -> CombinedWeights:
        if len(input_weights) != G.num_edges:
            raise InputError("one input weight per edge is required")
        if any(w < 0 for w in input_weights):
            raise InputError("input weights must be non-negative")
        return cls(tuple(int(w) for w in input_weights), G.num_edges * ((1 << weight_bits) - 1) + 1)

    def view(self) -> WeightView:
        return WeightView([w * self.scale for w in self.input_weights])

    def combine(self, catalytic: Sequence[int]) -> list[int]:
        return self.view().effective(catalytic)


def assignment_min_weight_max_matching(G: BipartiteGraph, W: Sequence[int]) -> frozenset:
    """Min-weight maximum matching via an assignment with a prohibitive non-edge cost."""
    if G.num_edges == 0:
        return frozenset()
    big = sum(W) + 1
    cost = np.full((G.n, G.n), float(big))
    for i, (u, v) in enumerate(G.edges):
        cost[u, v] = W[i]
    # Every assignment uses n cells; a non-edge costs more than all edges
    # together, so the optimum first maximises the number of real edges.
    rows, cols = linear_sum_assignment(cost)
    return frozenset(G.index[(u, v)] for u, v in zip(rows, cols) if (u, v) in G.index)


def min_weight_max_matching(G: BipartiteGraph, input_weights: Sequence[int], tape: CatalyticTape,
                            config: DriverConfig = DriverConfig()) -> tuple[frozenset, int, RunReport]:
    """Return ``(matching, total input weight, run report)``."""
    combined = CombinedWeights.for_tape(G, input_weights, tape.layout.weight_bits)
    report = run_clp_match(
        G, tape, config, view=combined.view(),
        fallback=lambda g: assignment_min_weight_max_matching(g, combined.input_weights))
    total = sum(combined.input_weights[i] for i in report.matching)
    return report.matching, total, report
