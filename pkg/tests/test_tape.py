import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clmatch.errors import ContractViolation, InputError
from clmatch.graph import BipartiteGraph
from clmatch.tape import CatalyticTape, TapeLayout, init_tape


def layout(n=2, m=2, b=None, r=3, scratch=0):
    return TapeLayout(n, m, b or TapeLayout.min_weight_bits(n), r, scratch)


def test_field_geometry():
    L = TapeLayout(4, 3, 12, 2, scratch_bits=5)
    assert (L.k_bits, L.vertex_bits, L.record_bits) == (3, 2, 7)
    assert L.padding_bits == 5
    assert L.reserve_offset == 36 and L.scratch_offset == 60 and L.total_bits == 65
    assert L.weight_offset(2) == 24 and L.reserve_slot_offset(1) == 48
    with pytest.raises(InputError):
        L.weight_offset(3)
    with pytest.raises(InputError):
        L.reserve_slot_offset(2)


def test_minimum_width_enforced():
    assert TapeLayout.min_weight_bits(2) == 6
    with pytest.raises(InputError):
        TapeLayout(2, 4, 5, 1)
    with pytest.raises(InputError):
        TapeLayout(2, 4, 6, 0)


def test_default_layout():
    G = BipartiteGraph.complete(4)
    L = TapeLayout.for_graph(G)
    assert L.weight_bits == 10  # 5 * ceil(log2 4)
    assert L.num_reserves == 13  # ceil(16 * sqrt(8) / 4) + 1
    assert TapeLayout.for_graph(BipartiteGraph.complete(2)).weight_bits == 6


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 16])
def test_record_roundtrip(n):
    L = TapeLayout(n, 1, TapeLayout.min_weight_bits(n) + 3, 1)
    for k, u, v in [(0, 0, 0), (n, n - 1, n - 1), (n // 2, 0, n - 1)]:
        assert L.unpack_record(L.pack_record(k, u, v)) == (k, u, v, 0)
    assert L.pack_record(n, n - 1, n - 1) % (1 << L.padding_bits) == 0


def test_all_zero_tape():
    L = layout(r=14)
    t = init_tape(L)
    assert not t.bits.any() and not t.snapshot.any()
    assert t.read_weights() == (0, 0)


def test_seed_determinism():
    L = layout()
    assert np.array_equal(init_tape(L, seed=5).bits, init_tape(L, seed=5).bits)
    assert not np.array_equal(init_tape(L, seed=5).bits, init_tape(L, seed=6).bits)


def test_hex_roundtrip():
    L = layout(b=6, r=2)  # 24 bits
    t = init_tape(L, "ff00a5")
    assert t.to_hex() == "ff00a5"
    assert "".join(map(str, t.bits)) == "111111110000000010100101"
    with pytest.raises(InputError):
        init_tape(L, "ff00")
    with pytest.raises(InputError):
        init_tape(L, "zz00a5")


def test_hex_with_spare_bits():
    L = layout(b=6, r=1, scratch=2)  # 20 bits, exactly 5 digits
    assert init_tape(L, "abcde").to_hex() == "abcde"
    L = layout(b=6, r=1, scratch=1)  # 19 bits: last digit keeps one zero bit
    assert init_tape(L, "abcdc").to_hex() == "abcdc"
    with pytest.raises(InputError):
        init_tape(L, "abcdd")


def test_big_endian_weights():
    L = TapeLayout(1, 2, 4, 1)
    t = init_tape(L, "000100110000")
    assert t.read_weights() == (1, 3)


@pytest.mark.parametrize("index", [0, 1, 2])
@pytest.mark.parametrize("value", [0, 21, 63])
def test_write_weight_roundtrip(index, value):
    t = init_tape(TapeLayout(2, 3, 6, 1), seed=1)
    before = t.read_weights()
    t.write_weight(index, value)
    after = t.read_weights()
    assert after[index] == value
    assert all(a == b for i, (a, b) in enumerate(zip(before, after)) if i != index)


def test_overflow_rejected():
    t = init_tape(layout(b=6))
    with pytest.raises(InputError):
        t.write_weight(0, 64)
    with pytest.raises(InputError):
        t.write_reserve(0, -1)


def test_restore_check():
    t = init_tape(layout(), seed=2)
    assert t.restore_check()
    t.bits[3] ^= 1
    assert not t.restore_check()
    t.bits[3] ^= 1
    assert t.restore_check()


def test_snapshot_is_read_only():
    t = init_tape(layout())
    with pytest.raises(ValueError):
        t.snapshot[0] = 1


def test_account_free():
    L = layout(n=4, m=1, b=12, r=3)
    t = init_tape(L)
    pad = 2 * 2  # the records leave 2 * ceil(log2 n) bits free at the minimum width
    t.account_free(pad)
    assert t.freed_bits == pad
    t.account_free(-pad)
    assert t.freed_bits == 0
    for _ in range(3):
        t.account_free(pad)
    assert t.freed_bits == 3 * pad == t.freed_bits_peak
    with pytest.raises(ContractViolation):
        t.account_free(-4 * pad)


def test_length_mismatch():
    L = layout()
    with pytest.raises(InputError):
        CatalyticTape(L, np.zeros(L.total_bits + 1, dtype=np.uint8))
    with pytest.raises(InputError):
        init_tape(L, "01", seed=1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 5), st.integers(0, 4), st.integers(1, 4), st.data())
def test_hex_codec_property(n, m, extra, r, data):
    L = TapeLayout(n, m, TapeLayout.min_weight_bits(n) + extra, r, data.draw(st.integers(0, 5)))
    bits = data.draw(st.lists(st.integers(0, 1), min_size=L.total_bits, max_size=L.total_bits))
    t = init_tape(L, np.array(bits, dtype=np.uint8))
    assert np.array_equal(init_tape(L, t.to_hex()).bits, t.bits)
