"""Maximum matching as an instance of lossy coding.

For a fixed graph, ``x`` is read as one weight field per edge.
:func:`lossy_comp` drops the field of a threshold edge and appends a
``(k, u, v)`` record one bit narrower, so its output is one bit shorter
than its input; :func:`lossy_decomp` rebuilds the dropped weight.  When
no threshold edge exists the weights isolate a matching of every size up
to the maximum, and :func:`a2_extract` reads a maximum matching off them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import ContractViolation, InputError, PromiseViolation
from .graph import BipartiteGraph, ceil_log2, validate_matching
from .isolation import extract_isolated_size_k
from .residual import Outcome, check_k_plus_1, is_maximum, recover_weight


@dataclass(frozen=True)
class LossyInstance:
    graph: BipartiteGraph
    backend: str = "combinatorial"

    def __post_init__(self):
        if self.graph.num_edges == 0:
            raise InputError("lossy coding needs at least one edge")

    @property
    def k_bits(self) -> int:
        return ceil_log2(self.graph.n + 1)

    @property
    def vertex_bits(self) -> int:
        return ceil_log2(self.graph.n)

    @property
    def record_bits(self) -> int:
        return self.k_bits + 2 * self.vertex_bits

    @property
    def field_bits(self) -> int:
        return self.record_bits + 1

    @property
    def input_bits(self) -> int:
        """f(n): one field per edge."""
        return self.graph.num_edges * self.field_bits

    @property
    def output_bits(self) -> int:
        return self.input_bits - self.field_bits + self.record_bits

    def decode(self, x: str) -> list[int]:
        if len(x) != self.input_bits or set(x) - {"0", "1"}:
            raise InputError(f"expected a {self.input_bits}-bit string")
        b = self.field_bits
        return [int(x[i * b:(i + 1) * b], 2) for i in range(self.graph.num_edges)]

    def encode(self, W) -> str:
        return "".join(format(w, f"0{self.field_bits}b") for w in W)

    def comp(self, x: str) -> str:
        return lossy_comp(self, x)

    def decomp(self, y: str) -> str:
        return lossy_decomp(self, y)


@dataclass(frozen=True)
class CompOutcome:
    """``k_star``/``edge`` are ``None`` when no size fails to be isolated."""

    k_star: int | None
    edge: int | None
    weights: tuple[int, ...]

    @property
    def compressible(self) -> bool:
        return self.edge is not None


def analyse(inst: LossyInstance, x: str) -> CompOutcome:
    """Find the smallest ``k`` whose successor size has a threshold edge.

    Sizes are tested upward from 0, so every size below the returned one
    is isolated.
    """
    G, W = inst.graph, inst.decode(x)
    for k in range(G.n + 1):
        out = check_k_plus_1(G, k, W, inst.backend)
        if out.kind is Outcome.BOT:
            break
        if out.kind is Outcome.THRESHOLD:
            return CompOutcome(k, out.edge, tuple(W))
    return CompOutcome(None, None, tuple(W))


def _record(inst: LossyInstance, k: int, u: int, v: int) -> str:
    vb = inst.vertex_bits
    bits = format(k, f"0{inst.k_bits}b")
    if vb:
        bits += format(u, f"0{vb}b") + format(v, f"0{vb}b")
    return bits


def lossy_comp(inst: LossyInstance, x: str) -> str:
    """Compress ``x`` by one bit, exactly when a threshold edge exists.

    Otherwise return a sentinel: the all-zero string, or the first string
    in a fixed candidate order whose decompression differs from ``x``.
    """
    outcome = analyse(inst, x)
    if outcome.compressible:
        G = inst.graph
        b, e = inst.field_bits, outcome.edge
        u, v = G.edges[e]
        return x[:e * b] + x[(e + 1) * b:] + _record(inst, outcome.k_star, u, v)
    length = inst.output_bits
    for y in ("0" * length, "1" * length, "0" * (length - 1) + "1"):
        if lossy_decomp(inst, y) != x:
            return y
    raise AssertionError("three distinct sentinels all decompress to x")  # pragma: no cover


def _fallback(inst: LossyInstance, y: str) -> str:
    # Distinct for distinct y, so different sentinels never collide.
    return y + "0" * (inst.input_bits - len(y))


def lossy_decomp(inst: LossyInstance, y: str) -> str:
    """Rebuild the weight dropped by :func:`lossy_comp`; total on all inputs.

    A suffix that does not name an edge and size from which a weight can
    be recovered maps to ``y`` padded with zeros.
    """
    if len(y) != inst.output_bits or set(y) - {"0", "1"}:
        raise InputError(f"expected a {inst.output_bits}-bit string")
    G = inst.graph
    rb, vb = inst.record_bits, inst.vertex_bits
    body, rec = y[:len(y) - rb], y[len(y) - rb:]
    k = int(rec[:inst.k_bits], 2)
    u = int(rec[inst.k_bits:inst.k_bits + vb], 2) if vb else 0
    v = int(rec[inst.k_bits + vb:], 2) if vb else 0
    if k > G.n or (u, v) not in G.index:
        return _fallback(inst, y)
    e = G.index[(u, v)]
    b = inst.field_bits
    rest = [int(body[i * b:(i + 1) * b], 2) for i in range(G.num_edges - 1)]
    W = [rest[i] if i < e else (0 if i == e else rest[i - 1]) for i in range(G.num_edges)]
    try:
        w = recover_weight(G, k, W, e, inst.backend)
    except (PromiseViolation, ContractViolation):
        return _fallback(inst, y)
    if not 0 <= w < (1 << b):
        return _fallback(inst, y)
    return body[:e * b] + format(w, f"0{b}b") + body[e * b:]


def a2_extract(G: BipartiteGraph, x: str, field_bits: int | None = None,
               backend: str = "combinatorial") -> frozenset:
    """A maximum matching from weights whose compression round trip fails.

    Every size from 0 up is extracted; all attempts up to the largest
    success must succeed and that matching must be maximum.  Anything else
    means the weights were compressible and raises
    :class:`ContractViolation`.
    """
    if G.num_edges == 0:
        return frozenset()
    inst = LossyInstance(G, backend)
    if field_bits is not None and field_bits != inst.field_bits:
        raise InputError("field width does not match the graph")
    W = inst.decode(x)
    found = {}
    for k in range(G.n + 1):
        try:
            found[k] = extract_isolated_size_k(G, k, W, backend)
        except PromiseViolation:
            pass
    top = max(found)
    missing = [k for k in range(top) if k not in found]
    if missing:
        raise ContractViolation(f"weights do not isolate sizes {missing}; the promise is false")
    M = found[top]
    if not validate_matching(G, M) or not is_maximum(G, M, W):
        raise ContractViolation("largest isolated matching is not maximum; the promise is false")
    return M


@dataclass
class SolveResult:
    witness: str
    matching: frozenset
    samples_tried: int
    roundtrip_failures_found: int


def lossy_solve(inst: LossyInstance, mode: str = "exhaustive", samples: int = 10_000,
                seed: int = 0, stop_at_first: bool = True) -> SolveResult:
    """Find ``x`` with ``decomp(comp(x)) != x`` and the matching it yields."""
    f = inst.input_bits
    if mode == "exhaustive":
        candidates = ("".join(bits) for bits in product("01", repeat=f))
    elif mode == "random":
        rng = np.random.default_rng(seed)
        candidates = ("".join(map(str, rng.integers(0, 2, size=f))) for _ in range(samples))
    else:
        raise InputError(f"unknown mode {mode!r}")
    witness, tried, failures = None, 0, 0
    for x in candidates:
        tried += 1
        if lossy_decomp(inst, lossy_comp(inst, x)) != x:
            failures += 1
            if witness is None:
                witness = x
            if stop_at_first:
                break
    if witness is None:
        if mode == "exhaustive":
            raise AssertionError("every string round-trips, contradicting pigeonhole")
        raise RuntimeError(f"no round-trip failure among {tried} random samples")
    return SolveResult(witness, a2_extract(inst.graph, witness, backend=inst.backend), tried, failures)
