import numpy as np
import pytest

from clmatch.driver import PLAIN, DriverConfig, WeightView, comp, decomp, fallback_direct, run_clp_match
from clmatch.errors import ContractViolation, InputError
from clmatch.generators import GeneratorSpec, generate, random_graph
from clmatch.graph import BipartiteGraph, validate_matching
from clmatch.oracles import max_matching_size
from clmatch.residual import Outcome, check_k_plus_1
from clmatch.tape import TapeLayout, init_tape

K22 = BipartiteGraph.complete(2)


def k22_tape(weights, reserves=(7, 0, 0)):
    L = TapeLayout(2, 4, 6, len(reserves))
    t = init_tape(L)
    for i, w in enumerate(weights):
        t.write_weight(i, w)
    for c, r in enumerate(reserves):
        t.write_reserve(c, r)
    return init_tape(L, t.bits)


def test_comp_example():
    t = k22_tape([3, 3, 3, 3])
    L = t.layout
    rec = comp(t, K22, 0, 0)
    assert (rec.k, rec.edge, rec.slot) == (0, 0, 0)
    assert t.read_weights() == (7, 3, 3, 3)
    assert L.unpack_record(t.read_reserve(0)) == (0, 0, 0, 0)
    assert t.freed_bits == L.padding_bits == 6 - (2 + 1 + 1)
    decomp(t, K22, rec)
    assert t.restore_check() and t.freed_bits == 0


def test_comp_requires_threshold():
    t = k22_tape([1, 2, 4, 8])
    with pytest.raises(ContractViolation):
        comp(t, K22, 0, 0)


def test_decomp_on_untouched_tape():
    t = k22_tape([3, 3, 3, 3])
    rec = comp(t, K22, 0, 0)
    fresh = k22_tape([3, 3, 3, 3])
    with pytest.raises(ContractViolation):
        decomp(fresh, K22, rec)


def test_stacked_comps_undo_in_reverse():
    rng = np.random.default_rng(0)
    done = 0
    for trial in range(2000):
        G = random_graph(int(rng.integers(2, 5)), 0.8, rng)
        L = TapeLayout.for_graph(G, num_reserves=3)
        t = init_tape(L, seed=trial)
        for i in range(G.num_edges):
            t.write_weight(i, int(rng.integers(0, 2)))
        t = init_tape(L, t.bits)
        records = []
        for c in range(3):
            k = 0
            while (out := check_k_plus_1(G, k, t.read_weights(), "combinatorial")).kind is Outcome.ISOLATED:
                k += 1
            if out.kind is Outcome.BOT:
                break
            records.append(comp(t, G, k, c))
        if len(records) < 3:
            continue
        for rec in reversed(records):
            decomp(t, G, rec)
        assert t.restore_check()
        done += 1
        if done == 500:
            break
    assert done == 500


def test_empty_graph():
    G = BipartiteGraph(3)
    t = init_tape(TapeLayout.for_graph(G), seed=1)
    r = run_clp_match(G, t)
    assert r.size == 0 and r.compressions == 0 and r.tape_restored


def test_distinct_powers_no_compression():
    G, t = generate(GeneratorSpec("complete", 2, weight_mode="distinct-powers"))
    assert t.read_weights() == (1, 2, 4, 8)
    r = run_clp_match(G, t)
    assert r.size == 2 and r.compressions == 0 and r.tape_restored


@pytest.mark.parametrize("backend", ["mvv", "combinatorial"])
def test_all_zero_k22(backend):
    L = TapeLayout.for_graph(K22)
    t = init_tape(L)
    r = run_clp_match(K22, t, DriverConfig(backend=backend))
    assert r.size == 2 and r.compressions >= 1 and r.tape_restored
    assert r.freed_bits_peak == r.compressions * L.padding_bits


def test_trace_and_report():
    G, t = generate(GeneratorSpec("complete", 2, weight_mode="all-equal", seed=3))
    r = run_clp_match(G, t, DriverConfig(record_trace=True))
    steps = [s["step"] for s in r.trace]
    assert steps.count("decomp") == r.compressions
    assert steps[-1] in ("decomp", "check", "fallback")
    d = r.to_dict()
    assert d["size"] == 2 and d["tape_restored"] and "trace" in d


def test_fallback_paths():
    G = BipartiteGraph.complete(3)
    t = init_tape(TapeLayout.for_graph(G))
    r = run_clp_match(G, t, DriverConfig(force_fallback=True))
    assert r.fallback_used and r.compressions == 0 and r.size == 3 and r.tape_restored
    t = init_tape(TapeLayout.for_graph(G))
    r = run_clp_match(G, t, DriverConfig(fallback_threshold=1))
    assert r.fallback_used and r.compressions == 1 and r.size == 3 and r.tape_restored
    with pytest.raises(InputError):
        run_clp_match(G, t, DriverConfig(fallback_threshold=99))


def test_tape_for_other_graph_rejected():
    t = init_tape(TapeLayout.for_graph(K22))
    with pytest.raises(InputError):
        run_clp_match(BipartiteGraph.complete(3), t)


def test_fallback_direct():
    assert len(fallback_direct(BipartiteGraph.complete(3))) == 3
    assert len(fallback_direct(BipartiteGraph(3, ((0, 0), (0, 1), (0, 2))))) == 1
    rng = np.random.default_rng(11)
    for _ in range(2000):
        G = random_graph(int(rng.integers(1, 7)), float(rng.random()), rng)
        M = fallback_direct(G)
        assert validate_matching(G, M) and len(M) == max_matching_size(G)


def test_mvv_driver_sample():
    rng = np.random.default_rng(12)
    for i in range(30):
        G = random_graph(3, 0.7, rng)
        t = init_tape(TapeLayout.for_graph(G, weight_bits=8), seed=i)
        r = run_clp_match(G, t, DriverConfig(weight_bits=8, backend="mvv"))
        assert r.size == max_matching_size(G) and r.tape_restored


def test_weight_view():
    assert PLAIN.effective([1, 2]) == [1, 2]
    v = WeightView([10, 20])
    assert v.effective([1, 2]) == [11, 22]
    assert v.raw_value(1, 25) == 5
