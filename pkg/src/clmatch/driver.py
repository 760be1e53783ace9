"""The catalytic matching loop: isolate, compress on failure, restore.

Weights come from the tape.  Whenever the current weights fail to isolate
the next matching size, one weight is provably redundant; :func:`comp`
moves a reserve value into its field and writes a short ``(k, edge)``
record into the reserve slot, freeing the slot's padding bits.
:func:`decomp` undoes that exactly.  After the answer is known all
compressions are undone in reverse order and the tape must equal its
snapshot.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import ContractViolation, InputError, TapeCorruption
from .graph import BipartiteGraph, validate_matching
from .oracles import hopcroft_karp
from .residual import Outcome, check_k_plus_1, recover_weight
from .tape import CatalyticTape, TapeLayout

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DriverConfig:
    """Run parameters; ``None`` means "derive from the graph"."""

    weight_bits: int | None = None
    num_reserves: int | None = None
    fallback_threshold: int | None = None
    force_fallback: bool = False
    record_trace: bool = False
    backend: str = "combinatorial"

    def layout(self, G: BipartiteGraph, scratch_bits: int = 0) -> TapeLayout:
        return TapeLayout.for_graph(G, self.weight_bits, self.num_reserves, scratch_bits)


@dataclass(frozen=True)
class CompressionRecord:
    c: int
    k: int
    edge: int
    slot: int


@dataclass
class RunReport:
    matching: frozenset
    compressions: int
    fallback_used: bool
    tape_restored: bool
    freed_bits_peak: int
    iterations: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    trace: list[dict] | None = None

    @property
    def size(self) -> int:
        return len(self.matching)

    def to_dict(self) -> dict:
        out = {
            "matching": [list(e) for e in self.edges],
            "size": self.size,
            "compressions": self.compressions,
            "fallback_used": self.fallback_used,
            "tape_restored": self.tape_restored,
            "freed_bits_peak": self.freed_bits_peak,
            "iterations": self.iterations,
        }
        if self.trace is not None:
            out["trace"] = self.trace
        return out


class WeightView:
    """How tape fields turn into the weights the algorithm sees.

    The plain view uses the fields as they are.  A combined view adds a
    fixed, dominant offset per edge; see :mod:`clmatch.extensions`.
    """

    def __init__(self, offsets: Sequence[int] | None = None):
        self.offsets = offsets

    def effective(self, raw: Sequence[int]) -> list[int]:
        if self.offsets is None:
            return list(raw)
        return [o + w for o, w in zip(self.offsets, raw)]

    def raw_value(self, e: int, effective_value: int) -> int:
        return effective_value - (self.offsets[e] if self.offsets is not None else 0)


PLAIN = WeightView()


def _check_tape(G: BipartiteGraph, tape: CatalyticTape) -> TapeLayout:
    layout = tape.layout
    if layout.n != G.n or layout.num_edges != G.num_edges:
        raise InputError("tape layout was built for a different graph")
    return layout


def comp(tape: CatalyticTape, G: BipartiteGraph, k: int, c: int, *,
         backend: str = "combinatorial", view: WeightView = PLAIN) -> CompressionRecord:
    """Erase the weight of a threshold edge, using reserve slot ``c``.

    The current weights must isolate size ``k`` and fail to isolate
    ``k + 1``.
    """
    layout = _check_tape(G, tape)
    W = view.effective(tape.read_weights())
    outcome = check_k_plus_1(G, k, W, backend)
    if outcome.kind is not Outcome.THRESHOLD:
        raise ContractViolation(f"comp called but size {k + 1} check returned {outcome.kind.value}")
    e = outcome.edge
    u, v = G.edges[e]
    r = tape.read_reserve(c)
    tape.write_weight(e, r)
    tape.write_reserve(c, layout.pack_record(k, u, v))
    tape.account_free(layout.padding_bits)
    return CompressionRecord(c, k, e, c)


def decomp(tape: CatalyticTape, G: BipartiteGraph, record: CompressionRecord, *,
           backend: str = "combinatorial", view: WeightView = PLAIN) -> None:
    """Invert :func:`comp` for ``record``; later compressions must already be undone."""
    layout = _check_tape(G, tape)
    if tape.freed_bits < layout.padding_bits:
        raise ContractViolation("no outstanding compression to undo")
    k, u, v, pad = layout.unpack_record(tape.read_reserve(record.slot))
    if pad or (k, (u, v)) != (record.k, G.edges[record.edge]):
        raise ContractViolation(f"reserve slot {record.slot} does not hold the expected record")
    e = record.edge
    raw = tape.read_weights()
    r = raw[e]
    W = view.effective(raw)
    try:
        recovered = view.raw_value(e, recover_weight(G, k, W, e, backend))
    except ContractViolation as exc:
        raise TapeCorruption(f"could not recover the weight of edge {e}: {exc}") from exc
    if not 0 <= recovered < (1 << layout.weight_bits):
        raise TapeCorruption(f"recovered weight {recovered} does not fit the field")
    tape.write_reserve(record.slot, r)
    tape.write_weight(e, recovered)
    tape.account_free(-layout.padding_bits)


def fallback_direct(G: BipartiteGraph) -> frozenset:
    """A maximum matching without any weights (Hopcroft-Karp)."""
    return hopcroft_karp(G)


def run_clp_match(G: BipartiteGraph, tape: CatalyticTape, config: DriverConfig = DriverConfig(), *,
                  view: WeightView = PLAIN,
                  fallback: Callable[[BipartiteGraph], frozenset] = fallback_direct) -> RunReport:
    """Compute a maximum matching of ``G`` using ``tape`` catalytically.

    Counters ``c`` (compressions so far) and ``k`` (largest isolated size)
    start at 0.  Each round tests size ``k + 1``: no larger matching ends
    the search, isolation increments ``k``, and a threshold edge triggers a
    compression into reserve slot ``c`` followed by a restart at ``k = 0``.
    Once ``c`` reaches the fallback threshold the matching is computed
    directly.  All compressions are then undone in reverse.
    """
    layout = _check_tape(G, tape)
    threshold = config.fallback_threshold
    if threshold is None:
        threshold = layout.num_reserves
    if threshold > layout.num_reserves:
        raise InputError("fallback_threshold may not exceed the number of reserve slots")
    trace = [] if config.record_trace else None
    records: list[CompressionRecord] = []
    k = c = iterations = 0
    fallback_used = False

    while True:
        if config.force_fallback or c >= threshold:
            matching = fallback(G)
            fallback_used = True
            if trace is not None:
                trace.append({"step": "fallback", "c": c})
            break
        iterations += 1
        W = view.effective(tape.read_weights())
        outcome = check_k_plus_1(G, k, W, config.backend)
        if trace is not None:
            trace.append({"step": "check", "c": c, "k": k, "outcome": outcome.kind.value,
                          "weights": list(W), "edge": outcome.edge})
        if outcome.kind is Outcome.BOT:
            matching = outcome.matching
            break
        if outcome.kind is Outcome.ISOLATED:
            k += 1
            continue
        rec = comp(tape, G, k, c, backend=config.backend, view=view)
        log.debug("compressed edge %d at k=%d into slot %d", rec.edge, k, c)
        records.append(rec)
        c += 1
        k = 0

    for rec in reversed(records):
        decomp(tape, G, rec, backend=config.backend, view=view)
        if trace is not None:
            trace.append({"step": "decomp", "c": rec.c, "k": rec.k, "edge": rec.edge})

    restored = tape.restore_check()
    if not validate_matching(G, matching):
        raise ContractViolation("driver produced an invalid matching")
    return RunReport(matching, len(records), fallback_used, restored, tape.freed_bits_peak,
                     iterations, G.pairs(matching), trace)
