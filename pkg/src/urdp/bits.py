"""Bit strings backed by Python integers.

A :class:`BitString` is an ``(value, length)`` pair.  Bit 1 is the leftmost,
most significant bit, so the integer value of a string is its big-endian
reading and ``msb``/``lsb`` reduce to shifts and masks.  Leading zeros are
kept by ``length``: ``BitString.from_str("01") != BitString.from_str("1")``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import BitOverflowError, LengthError, ParameterError

__all__ = [
    "BitString",
    "EMPTY",
    "concat",
    "from_integer",
    "hamming_weight",
    "lsb",
    "msb",
    "to_integer",
]


@dataclass(frozen=True, slots=True)
class BitString:
    value: int
    length: int

    def __post_init__(self) -> None:
        if self.length < 0:
            raise ParameterError(f"negative length {self.length}")
        if self.value < 0:
            raise ParameterError("bit string value must be non-negative")
        if self.value.bit_length() > self.length:
            raise BitOverflowError(
                f"value needs {self.value.bit_length()} bits, length is {self.length}"
            )

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> BitString:
        value = 0
        length = 0
        for b in bits:
            if b not in (0, 1):
                raise ParameterError(f"not a bit: {b!r}")
            value = (value << 1) | b
            length += 1
        return cls(value, length)

    @classmethod
    def from_str(cls, text: str) -> BitString:
        """Parse ``"1011"``; spaces, commas and underscores are ignored."""
        cleaned = "".join(ch for ch in text if ch not in " ,_")
        if cleaned and set(cleaned) - {"0", "1"}:
            raise ParameterError(f"not a bit string: {text!r}")
        return cls(int(cleaned, 2) if cleaned else 0, len(cleaned))

    @classmethod
    def from_bytes(cls, data: bytes) -> BitString:
        return cls(int.from_bytes(data, "big"), 8 * len(data))

    def to_bytes(self) -> bytes:
        if self.length % 8:
            raise LengthError(f"length {self.length} is not a multiple of 8")
        return self.value.to_bytes(self.length // 8, "big")

    def __len__(self) -> int:
        return self.length

    def __iter__(self) -> Iterator[int]:
        for shift in range(self.length - 1, -1, -1):
            yield (self.value >> shift) & 1

    def __getitem__(self, index: int) -> int:
        # 0-based, left to right
        if index < 0:
            index += self.length
        if not 0 <= index < self.length:
            raise IndexError(index)
        return (self.value >> (self.length - 1 - index)) & 1

    def __add__(self, other: BitString) -> BitString:
        if not isinstance(other, BitString):
            return NotImplemented
        return BitString((self.value << other.length) | other.value, self.length + other.length)

    def __xor__(self, other: BitString) -> BitString:
        if not isinstance(other, BitString):
            return NotImplemented
        if self.length != other.length:
            raise LengthError("xor of bit strings with different lengths")
        return BitString(self.value ^ other.value, self.length)

    def __str__(self) -> str:
        return format(self.value, f"0{self.length}b") if self.length else ""

    def __repr__(self) -> str:
        if self.length <= 64:
            return f"BitString('{self}')"
        return f"BitString(<{self.length} bits>)"

    def msb(self, x: int) -> BitString:
        return msb(self, x)

    def lsb(self, x: int) -> BitString:
        return lsb(self, x)

    def weight(self) -> int:
        return self.value.bit_count()


EMPTY = BitString(0, 0)


def _check_count(a: BitString, x: int) -> None:
    if x < 0 or x > a.length:
        raise LengthError(f"cannot take {x} bits of a {a.length}-bit string")


def msb(a: BitString, x: int) -> BitString:
    """Leftmost ``x`` bits of ``a``."""
    _check_count(a, x)
    return BitString(a.value >> (a.length - x), x)


def lsb(a: BitString, x: int) -> BitString:
    """Rightmost ``x`` bits of ``a``."""
    _check_count(a, x)
    return BitString(a.value & ((1 << x) - 1), x)


def hamming_weight(v: BitString) -> int:
    return v.value.bit_count()


def concat(*parts: BitString) -> BitString:
    value = 0
    length = 0
    for p in parts:
        value = (value << p.length) | p.value
        length += p.length
    return BitString(value, length)


def to_integer(a: BitString) -> int:
    """Big-endian integer value; the empty string maps to 0."""
    return a.value


def from_integer(y: int, length: int) -> BitString:
    """``length``-bit big-endian expansion of ``y``, zero-padded on the left."""
    if y < 0:
        raise ParameterError("cannot expand a negative integer")
    if y.bit_length() > length:
        raise BitOverflowError(f"{y.bit_length()}-bit integer does not fit in {length} bits")
    return BitString(y, length)
