"""Fixed-length bit strings used for candidate IDs and broadcast payloads."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering


def log2n(n: int) -> int:
    """ceil(log2 n), clamped to at least 1 so loop bounds stay positive."""
    if n < 1:
        raise ValueError("n must be positive")
    return max(1, math.ceil(math.log2(n)))


@total_ordering
@dataclass(frozen=True)
class Bitstring:
    """An MSB-first bit vector. ``value`` holds the bits as an unsigned int.

    Bit 1 is the most significant. Equal-length strings compare as unsigned
    integers; in general the order is lexicographic, so the empty string
    sorts below everything else.
    """

    value: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("negative length")
        if self.value < 0 or self.value >> self.length:
            raise ValueError(f"value {self.value} does not fit in {self.length} bits")

    @classmethod
    def from_str(cls, s: str) -> "Bitstring":
        if s and set(s) - {"0", "1"}:
            raise ValueError(f"not a bit string: {s!r}")
        return cls(int(s, 2) if s else 0, len(s))

    @classmethod
    def from_bits(cls, bits) -> "Bitstring":
        value = 0
        for b in bits:
            value = (value << 1) | (1 if b else 0)
        return cls(value, len(bits))

    @property
    def empty(self) -> bool:
        return self.length == 0

    def __len__(self) -> int:
        return self.length

    def bit(self, i: int) -> int:
        """Bit at 1-based position ``i`` (1 = most significant)."""
        if not 1 <= i <= self.length:
            raise IndexError(i)
        return (self.value >> (self.length - i)) & 1

    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(1, self.length + 1))

    def prefix(self, k: int) -> "Bitstring":
        if not 0 <= k <= self.length:
            raise ValueError(k)
        return Bitstring(self.value >> (self.length - k), k)

    def popcount(self) -> int:
        return bin(self.value).count("1")

    def __or__(self, other: "Bitstring") -> "Bitstring":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return Bitstring(self.value | other.value, self.length)

    def covers(self, other: "Bitstring") -> bool:
        """True if every 1 of ``other`` is also set here (bitwise other <= self)."""
        return self.length == other.length and other.value & ~self.value == 0

    def __lt__(self, other: "Bitstring") -> bool:
        if not isinstance(other, Bitstring):
            return NotImplemented
        if self.length == other.length:
            return self.value < other.value
        return self.bits() < other.bits()

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        return f"Bitstring('{self}')"


EMPTY = Bitstring(0, 0)
ONE = Bitstring(1, 1)
