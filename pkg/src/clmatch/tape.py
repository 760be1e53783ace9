"""A simulated catalytic tape.

The tape is a bit vector split into three consecutive regions: one
``b``-bit weight field per edge, ``num_reserves`` reserve slots of ``b``
bits each, and a scratch region.  Fields are read and written as unsigned
big-endian integers.  The initial contents are kept as an immutable
snapshot so that restoration can be checked bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation, InputError
from .graph import BipartiteGraph, ceil_log2


@dataclass(frozen=True)
class TapeLayout:
    n: int
    num_edges: int
    weight_bits: int
    num_reserves: int
    scratch_bits: int = 0

    def __post_init__(self):
        if self.num_reserves < 1:
            raise InputError("at least one reserve slot is required")
        if self.scratch_bits < 0:
            raise InputError("scratch_bits must be non-negative")
        if self.weight_bits < self.min_weight_bits(self.n):
            raise InputError(
                f"weight_bits={self.weight_bits} cannot hold a (k, edge) record plus "
                f"two free bits; need at least {self.min_weight_bits(self.n)}")

    @staticmethod
    def min_weight_bits(n: int) -> int:
        return ceil_log2(n + 1) + 2 * ceil_log2(n) + 2

    @classmethod
    def for_graph(cls, G: BipartiteGraph, weight_bits: int | None = None,
                  num_reserves: int | None = None, scratch_bits: int = 0) -> TapeLayout:
        """Layout for ``G``.

        Defaults: ``b = max(5 * ceil(log2 n), minimum legal width)`` and
        ``ceil(|E| * sqrt(2n) / (2 * ceil(log2 n))) + 1`` reserve slots.
        """
        n = G.n
        if weight_bits is None:
            weight_bits = max(5 * ceil_log2(n), cls.min_weight_bits(n))
        if num_reserves is None:
            per = max(1, 2 * ceil_log2(n))
            num_reserves = math.ceil(G.num_edges * math.sqrt(2 * n) / per) + 1
        return cls(n, G.num_edges, weight_bits, num_reserves, scratch_bits)

    @property
    def k_bits(self) -> int:
        return ceil_log2(self.n + 1)

    @property
    def vertex_bits(self) -> int:
        return ceil_log2(self.n)

    @property
    def record_bits(self) -> int:
        return self.k_bits + 2 * self.vertex_bits

    @property
    def padding_bits(self) -> int:
        """Bits of a reserve slot left zero by a compression record."""
        return self.weight_bits - self.record_bits

    @property
    def reserve_offset(self) -> int:
        return self.num_edges * self.weight_bits

    @property
    def scratch_offset(self) -> int:
        return self.reserve_offset + self.num_reserves * self.weight_bits

    @property
    def total_bits(self) -> int:
        return self.scratch_offset + self.scratch_bits

    def weight_offset(self, i: int) -> int:
        if not 0 <= i < self.num_edges:
            raise InputError(f"weight field {i} out of range")
        return i * self.weight_bits

    def reserve_slot_offset(self, c: int) -> int:
        if not 0 <= c < self.num_reserves:
            raise InputError(f"reserve slot {c} out of range")
        return self.reserve_offset + c * self.weight_bits

    def pack_record(self, k: int, u: int, v: int) -> int:
        """``k | u | v | zero padding`` as one ``b``-bit value."""
        value = (k << (2 * self.vertex_bits)) | (u << self.vertex_bits) | v
        return value << self.padding_bits

    def unpack_record(self, value: int) -> tuple[int, int, int, int]:
        """Return ``(k, u, v, padding)``."""
        pad = value & ((1 << self.padding_bits) - 1)
        value >>= self.padding_bits
        vmask = (1 << self.vertex_bits) - 1
        return value >> (2 * self.vertex_bits), (value >> self.vertex_bits) & vmask, value & vmask, pad


def _bits_from_int(value: int, width: int) -> np.ndarray:
    return np.array([(value >> (width - 1 - i)) & 1 for i in range(width)], dtype=np.uint8)


def _int_from_bits(bits: np.ndarray) -> int:
    value = 0
    for b in bits:
        value = (value << 1) | int(b)
    return value


class CatalyticTape:
    """Bit vector with a frozen snapshot of its initial contents."""

    def __init__(self, layout: TapeLayout, bits):
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 1 or len(bits) != layout.total_bits:
            raise InputError(f"tape needs {layout.total_bits} bits, got {bits.size}")
        if np.any(bits > 1):
            raise InputError("tape bits must be 0 or 1")
        self.layout = layout
        self.bits = bits.copy()
        self.snapshot = bits.copy()
        self.snapshot.setflags(write=False)
        self.freed_bits = 0
        self.freed_bits_peak = 0

    @classmethod
    def from_seed(cls, layout: TapeLayout, seed: int) -> CatalyticTape:
        rng = np.random.default_rng(seed)
        return cls(layout, rng.integers(0, 2, size=layout.total_bits, dtype=np.uint8))

    @classmethod
    def from_hex(cls, layout: TapeLayout, text: str) -> CatalyticTape:
        """Exact bits from hex; the last digit's unused low bits must be zero."""
        text = text.strip().lower().removeprefix("0x")
        digits = -(-layout.total_bits // 4)
        if len(text) != digits:
            raise InputError(f"tape needs {digits} hex digits, got {len(text)}")
        try:
            value = int(text, 16) if text else 0
        except ValueError:
            raise InputError("tape is not a hex string") from None
        spare = digits * 4 - layout.total_bits
        if value & ((1 << spare) - 1):
            raise InputError("padding bits after the last tape bit must be zero")
        return cls(layout, _bits_from_int(value >> spare, layout.total_bits))

    @classmethod
    def from_bitstring(cls, layout: TapeLayout, text: str) -> CatalyticTape:
        if set(text) - {"0", "1"}:
            raise InputError("bit string may only contain 0 and 1")
        return cls(layout, np.frombuffer(text.encode(), dtype=np.uint8) - ord("0"))

    def to_hex(self) -> str:
        digits = -(-len(self.bits) // 4)
        spare = digits * 4 - len(self.bits)
        return format(_int_from_bits(self.bits) << spare, f"0{digits}x") if digits else ""

    def read_field(self, offset: int, width: int) -> int:
        return _int_from_bits(self.bits[offset:offset + width])

    def write_field(self, offset: int, width: int, value: int) -> None:
        if not 0 <= value < (1 << width):
            raise InputError(f"value {value} does not fit in {width} bits")
        self.bits[offset:offset + width] = _bits_from_int(value, width)

    def read_weights(self) -> tuple[int, ...]:
        b = self.layout.weight_bits
        return tuple(self.read_field(i * b, b) for i in range(self.layout.num_edges))

    def write_weight(self, index: int, value: int) -> None:
        self.write_field(self.layout.weight_offset(index), self.layout.weight_bits, value)

    def read_reserve(self, c: int) -> int:
        return self.read_field(self.layout.reserve_slot_offset(c), self.layout.weight_bits)

    def write_reserve(self, c: int, value: int) -> None:
        self.write_field(self.layout.reserve_slot_offset(c), self.layout.weight_bits, value)

    def restore_check(self) -> bool:
        return bool(np.array_equal(self.bits, self.snapshot))

    def account_free(self, delta_bits: int) -> None:
        balance = self.freed_bits + delta_bits
        if balance < 0:
            raise ContractViolation(f"freed-bit balance would drop to {balance}")
        self.freed_bits = balance
        self.freed_bits_peak = max(self.freed_bits_peak, balance)


def init_tape(layout: TapeLayout, initial=None, *, seed: int | None = None) -> CatalyticTape:
    """Create a tape from a hex string, a ``0``/``1`` string, a bit array, or a seed."""
    if seed is not None:
        if initial is not None:
            raise InputError("give either initial contents or a seed, not both")
        return CatalyticTape.from_seed(layout, seed)
    if initial is None:
        return CatalyticTape(layout, np.zeros(layout.total_bits, dtype=np.uint8))
    if isinstance(initial, str):
        if set(initial) <= {"0", "1"} and len(initial) == layout.total_bits:
            return CatalyticTape.from_bitstring(layout, initial)
        return CatalyticTape.from_hex(layout, initial)
    return CatalyticTape(layout, initial)
