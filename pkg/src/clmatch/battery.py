"""The property battery behind ``clmatch testsuite`` and the acceptance tests.

Each ``check_*`` function runs one property over a family of instances
and returns a :class:`Check`.  Ground truth always comes from
:mod:`clmatch.oracles`; the code under test never grades itself.
``scale`` shrinks instance counts for quick runs (1.0 is the full size).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .driver import DriverConfig, comp, decomp, run_clp_match
from .errors import ContractViolation, PromiseViolation
from .extensions import min_weight_max_matching
from .generators import GeneratorSpec, all_bipartite_graphs, generate, random_graph
from .graph import BipartiteGraph, ComponentKind, classify_components, symmetric_difference, validate_matching
from .isolation import _mvv_perfect, clique_unique_matching, extend_to_perfect, extract_isolated_size_k
from .lossy import LossyInstance, a2_extract, lossy_comp, lossy_decomp, lossy_solve
from .oracles import brute_force_matchings, max_matching_size, oracle_min_matching
from .residual import Outcome, check_k_plus_1, find_threshold_edge, recover_weight
from .tape import TapeLayout, init_tape


@dataclass
class Check:
    name: str
    total: int = 0
    failed: int = 0
    examples: list[str] = field(default_factory=list)
    notes: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.total > 0 and self.failed == 0

    def record(self, ok: bool, what) -> None:
        self.total += 1
        if not ok:
            self.failed += 1
            if len(self.examples) < 5:
                self.examples.append(str(what))

    def line(self) -> str:
        extra = "".join(f" {k}={v}" for k, v in self.notes.items())
        head = f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.total - self.failed}/{self.total}"
        tail = f" first failures: {self.examples}" if self.examples else ""
        return f"{head}{extra} ({self.seconds:.1f}s){tail}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        t0 = time.perf_counter()
        chk = fn(*args, **kwargs)
        chk.seconds = time.perf_counter() - t0
        return chk
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _count(full: int, scale: float, floor: int = 1) -> int:
    return max(floor, int(round(full * scale)))


def _tapes(layout: TapeLayout, num_random: int):
    yield "zero", init_tape(layout)
    yield "one", init_tape(layout, "1" * layout.total_bits)
    for s in range(num_random):
        yield f"seed{s}", init_tape(layout, seed=s)


def _sweep(name: str, sizes, num_random: int, config: DriverConfig, graphs_per_size=None) -> Check:
    chk = Check(name)
    comps = fallbacks = 0
    for n in sizes:
        graphs = list(all_bipartite_graphs(n))
        if graphs_per_size is not None:
            graphs = graphs[:: max(1, len(graphs) // graphs_per_size)]
        for mask, G in enumerate(graphs):
            best = max_matching_size(G)
            layout = config.layout(G)
            for label, tape in _tapes(layout, num_random):
                r = run_clp_match(G, tape, config)
                comps += r.compressions
                fallbacks += r.fallback_used
                ok = r.size == best and validate_matching(G, r.matching) and r.tape_restored
                chk.record(ok, (n, G.edges, label))
    chk.notes.update(compressions=comps, fallbacks=fallbacks)
    return chk


@_timed
def check_contract_sweep(scale: float = 1.0) -> Check:
    """Every n=3 graph, 52 tapes each: correct size, valid, tape restored."""
    per = None if scale >= 1 else _count(512, scale, 8)
    return _sweep("catalytic contract sweep (n=3)", [3], _count(50, scale), DriverConfig(),
                  graphs_per_size=per)


@_timed
def check_compression_path(scale: float = 1.0) -> Check:
    """Compressions happen, each frees the padding width, tapes restore."""
    chk = Check("compression path exercised")
    instances = [("K22 zero tape", BipartiteGraph.complete(2), None)]
    count = _count(120, scale, 4)
    for i in range(count):
        spec = GeneratorSpec("crafted-nonisolating", 2 + i % 4, p=0.6, seed=i)
        G, tape = generate(spec)
        instances.append((f"crafted n={spec.n} seed={i}", G, tape))
    comps = 0
    for label, G, tape in instances:
        config = DriverConfig(record_trace=True)
        layout = config.layout(G)
        if tape is None:
            tape = init_tape(layout)
        pad = layout.padding_bits
        r = run_clp_match(G, tape, config)
        comps += r.compressions
        ok = (r.compressions >= 1 and r.freed_bits_peak == r.compressions * pad
              and tape.freed_bits == 0 and r.tape_restored and r.size == max_matching_size(G))
        chk.record(ok, (label, r.compressions, r.freed_bits_peak, pad))
    chk.notes["compressions"] = comps
    return chk


def _random_instance(rng, n_max: int, w_max: int, n_min: int = 1):
    n = int(rng.integers(n_min, n_max + 1))
    G = random_graph(n, float(rng.uniform(0.3, 1.0)), rng)
    W = [int(w) for w in rng.integers(0, w_max + 1, size=G.num_edges)]
    return G, W


def _compare_backends(chk: Check, G, k, W, stats):
    truth = oracle_min_matching(G, k, W)
    answers = []
    for backend in ("mvv", "combinatorial"):
        try:
            answers.append(extract_isolated_size_k(G, k, W, backend))
        except PromiseViolation:
            answers.append(None)
    if truth is None:
        stats["non_isolating"] += 1
        chk.record(answers == [None, None], ("missed PromiseViolation", G.edges, k, W, answers))
        return
    stats["isolating"] += 1
    # The determinant read-out on its own, before the uniqueness certificate.
    raw = None
    if k > 0:
        ext = extend_to_perfect(G, k, W)
        raw = frozenset(ext.origin[i] for i in _mvv_perfect(ext) if ext.origin[i] is not None)
    else:
        raw = frozenset()
    chk.record(answers[0] == answers[1] == truth == raw, ("disagree", G.edges, k, W, answers, truth))


@_timed
def check_backend_equivalence(scale: float = 1.0) -> Check:
    """Determinant and combinatorial extraction agree with the oracle.

    Weights in [0, 7]: all weight vectors on every graph with n <= 2 and
    on every n=3 graph with at most three edges; on the remaining n=3
    graphs a batch of seeded vectors per graph (the full 8**9 product is
    out of reach).  Then random instances up to n=5.
    """
    chk = Check("backend equivalence")
    stats = {"isolating": 0, "non_isolating": 0}
    exhaustive_cap = {1: 1, 2: 4, 3: 3 if scale >= 1 else 1}
    for n in (1, 2, 3):
        for G in all_bipartite_graphs(n):
            if G.num_edges > exhaustive_cap[n]:
                continue
            for W in product(range(8), repeat=G.num_edges):
                for k in range(n + 1):
                    _compare_backends(chk, G, k, list(W), stats)
    rng = np.random.default_rng(3)
    per_graph = _count(6, scale)
    graphs3 = list(all_bipartite_graphs(3))
    if scale < 1:
        graphs3 = graphs3[:: max(1, int(1 / scale))]
    for G in graphs3:
        if G.num_edges <= exhaustive_cap[3]:
            continue
        for _ in range(per_graph):
            W = [int(w) for w in rng.integers(0, 8, size=G.num_edges)]
            for k in range(4):
                _compare_backends(chk, G, k, W, stats)
    for _ in range(_count(10_000, scale)):
        G, W = _random_instance(rng, 5, 7)
        _compare_backends(chk, G, int(rng.integers(0, G.n + 1)), W, stats)
    chk.notes.update(stats)
    return chk


@_timed
def check_clique_isolation(scale: float = 1.0) -> Check:
    """Reverse pairing is the strict unique minimum under w(u, v) = u * v."""
    chk = Check("clique isolation")
    rng = np.random.default_rng(4)
    for s in range(1, 7):
        for _ in range(_count(20, scale)):
            idx = sorted(int(x) for x in rng.choice(np.arange(1, 100), size=2 * s, replace=False))
            rng.shuffle(idx)
            left, right = sorted(idx[:s]), sorted(idx[s:])
            expected = sorted(clique_unique_matching(s, left, right))
            costs = {}
            for perm in permutations(range(s)):
                costs[tuple(sorted((left[i], right[perm[i]]) for i in range(s)))] = sum(
                    left[i] * right[perm[i]] for i in range(s))
            best = min(costs.values())
            winners = [m for m, c in costs.items() if c == best]
            chk.record(winners == [tuple(expected)], (s, left, right))
    return chk


@_timed
def check_symdif(scale: float = 1.0) -> Check:
    """M^{k+1} xor M^k is a single augmenting path w.r.t. M^k."""
    chk = Check("sym-dif augmenting path")
    rng = np.random.default_rng(5)
    target = _count(1000, scale)
    while chk.total < target:
        G, W = _random_instance(rng, 5, 31, n_min=2)
        report = brute_force_matchings(G, W)
        ks = [k for k in range(report.max_size) if report.isolating(k) and report.isolating(k + 1)]
        if not ks:
            continue
        k = int(rng.choice(ks))
        Mk = extract_isolated_size_k(G, k, W, "combinatorial")
        Mk1 = extract_isolated_size_k(G, k + 1, W, "combinatorial")
        if (Mk, Mk1) != (report.argmins[k][0], report.argmins[k + 1][0]):
            chk.record(False, ("extraction disagrees with oracle", G.edges, k, W))
            continue
        comps = classify_components(G, symmetric_difference(Mk, Mk1, G), Mk, Mk1)
        chk.record(len(comps) == 1 and comps[0].kind is ComponentKind.AUGMENTING_M1,
                   (G.edges, k, W, [c.kind.name for c in comps]))
    return chk


def _equivalence_case(chk: Check, G, k, W, stats):
    report = brute_force_matchings(G, W)
    if not report.isolating(k) or k + 1 > report.max_size:
        return
    M = report.argmins[k][0]
    iso = report.isolating(k + 1)
    stats["isolated" if iso else "threshold"] += 1
    chk.record((find_threshold_edge(G, M, W) is None) == iso, (G.edges, k, W))


@_timed
def check_isolation_equivalence(scale: float = 1.0) -> Check:
    """No threshold edge for M^k exactly when the oracle isolates size k+1.

    Exhaustive over all graphs with n <= 3 and every k: all weight vectors
    in [0, 2] for n <= 2, and for n=3 the all-zero vector plus seeded
    vectors in [0, 3].  Then random instances up to n=5.
    """
    chk = Check("isolation equivalence")
    stats = {"isolated": 0, "threshold": 0}
    for n in (1, 2):
        for G in all_bipartite_graphs(n):
            for W in product(range(3), repeat=G.num_edges):
                for k in range(n):
                    _equivalence_case(chk, G, k, list(W), stats)
    rng = np.random.default_rng(6)
    graphs3 = list(all_bipartite_graphs(3))
    if scale < 1:
        graphs3 = graphs3[:: max(1, int(1 / scale))]
    for G in graphs3:
        vectors = [[0] * G.num_edges] + [
            [int(w) for w in rng.integers(0, 4, size=G.num_edges)] for _ in range(_count(4, scale))]
        for W in vectors:
            for k in range(3):
                _equivalence_case(chk, G, k, W, stats)
    target = chk.total + _count(1000, scale)
    while chk.total < target:
        G, W = _random_instance(rng, 5, 3, n_min=2)
        _equivalence_case(chk, G, int(rng.integers(0, G.n)), W, stats)
    chk.notes.update(stats)
    return chk


@_timed
def check_weight_recovery(scale: float = 1.0) -> Check:
    """Each comp erases a weight that recover_weight rebuilds exactly, and
    decomp(comp(tape)) is the identity."""
    chk = Check("weight recovery")
    rng = np.random.default_rng(7)
    target = _count(1000, scale)
    attempts = 0
    while chk.total < target:
        attempts += 1
        n = int(rng.integers(2, 5))
        G = random_graph(n, float(rng.uniform(0.4, 1.0)), rng)
        if G.num_edges < 2:
            continue
        layout = TapeLayout.for_graph(G)
        tape = init_tape(layout, seed=attempts)
        # Small weights make isolation failures, hence comps, common.
        for i in range(G.num_edges):
            tape.write_weight(i, int(rng.integers(0, 4)))
        tape = init_tape(layout, tape.bits.copy())
        W = list(tape.read_weights())
        k = 0
        while True:
            out = check_k_plus_1(G, k, W, "combinatorial")
            if out.kind is not Outcome.ISOLATED:
                break
            k += 1
        if out.kind is Outcome.BOT:
            continue
        before = tape.bits.copy()
        rec = comp(tape, G, k, int(rng.integers(0, layout.num_reserves)))
        erased = W[rec.edge]
        after = list(tape.read_weights())
        got = recover_weight(G, k, after, rec.edge, "combinatorial")
        decomp(tape, G, rec)
        chk.record(got == erased and np.array_equal(before, tape.bits) and tape.freed_bits == 0,
                   (G.edges, k, W, rec.edge, got, erased))
    chk.notes["attempts"] = attempts
    return chk


def _dichotomy(chk: Check, inst: LossyInstance, x: str, best: int, stats):
    roundtrip = lossy_decomp(inst, lossy_comp(inst, x)) == x
    try:
        M = a2_extract(inst.graph, x)
        extracted = validate_matching(inst.graph, M) and len(M) == best
    except ContractViolation:
        extracted = False
    stats["roundtrip" if roundtrip else "extracted"] += 1
    chk.record(roundtrip != extracted, (inst.graph.edges, x, roundtrip, extracted))


@_timed
def check_lossy_dichotomy(scale: float = 1.0) -> Check:
    """Exactly one of: the round trip succeeds, or a2_extract returns a
    maximum matching.  Plus the lossy_solve pipeline on random graphs."""
    chk = Check("lossy dichotomy")
    stats = {"roundtrip": 0, "extracted": 0}
    small = [G for n in (1, 2) for G in all_bipartite_graphs(n) if 1 <= G.num_edges <= 2]
    for G in small:
        inst = LossyInstance(G)
        best = max_matching_size(G)
        for bits in product("01", repeat=inst.input_bits):
            _dichotomy(chk, inst, "".join(bits), best, stats)
    rng = np.random.default_rng(8)
    inst = LossyInstance(BipartiteGraph.complete(2))
    for _ in range(_count(10_000, scale)):
        x = "".join(map(str, rng.integers(0, 2, size=inst.input_bits)))
        _dichotomy(chk, inst, x, 2, stats)
    solved = 0
    for i in range(_count(50, scale)):
        while True:
            G = random_graph(int(rng.integers(1, 5)), float(rng.uniform(0.3, 1.0)), rng)
            if G.num_edges:
                break
        res = lossy_solve(LossyInstance(G), "random", samples=20_000, seed=i)
        ok = validate_matching(G, res.matching) and len(res.matching) == max_matching_size(G)
        solved += ok
        chk.record(ok, ("lossy_solve", G.edges))
    stats["lossy_solve_ok"] = solved
    chk.notes.update(stats)
    return chk


@_timed
def check_fallback(scale: float = 1.0) -> Check:
    """Forced fallback and fallback_threshold=1 over every graph with n <= 3."""
    per = None if scale >= 1 else _count(512, scale, 8)
    a = _sweep("forced", [1, 2, 3], _count(50, scale), DriverConfig(force_fallback=True), per)
    b = _sweep("threshold 1", [1, 2, 3], _count(50, scale), DriverConfig(fallback_threshold=1), per)
    chk = Check("fallback coverage", a.total + b.total, a.failed + b.failed, a.examples + b.examples)
    chk.notes.update(forced_fallbacks=a.notes["fallbacks"], threshold1_fallbacks=b.notes["fallbacks"])
    return chk


@_timed
def check_extension(scale: float = 1.0) -> Check:
    """min_weight_max_matching attains the oracle's (max size, min input weight)."""
    chk = Check("min-weight maximum matching")
    rng = np.random.default_rng(10)
    for i in range(_count(200, scale)):
        G, W = _random_instance(rng, 4, 9)
        report = brute_force_matchings(G, W)
        tape = init_tape(TapeLayout.for_graph(G), seed=i)
        M, total, run = min_weight_max_matching(G, W, tape)
        want = (report.max_size, report.min_weight[report.max_size])
        chk.record((len(M), total) == want and validate_matching(G, M) and run.tape_restored,
                   (G.edges, W, (len(M), total), want))
    return chk


ALL_CHECKS = (
    check_contract_sweep,
    check_compression_path,
    check_backend_equivalence,
    check_clique_isolation,
    check_symdif,
    check_isolation_equivalence,
    check_weight_recovery,
    check_lossy_dichotomy,
    check_fallback,
    check_extension,
)


def run_battery(quick: bool = False):
    """Run every check; returns ``(name, passed, detail)`` triples."""
    scale = 0.05 if quick else 1.0
    out = []
    for fn in ALL_CHECKS:
        chk = fn(scale)
        out.append((chk.name, chk.passed, chk.line()))
    return out
