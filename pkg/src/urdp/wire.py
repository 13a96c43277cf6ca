"""Length-framed binary fields shared by key and ciphertext formats.

Every field is an 8-byte big-endian length followed by that many payload
bytes.  Readers are strict: short reads, oversize lengths and trailing
bytes raise :class:`FormatError`.
"""

from __future__ import annotations

from .errors import FormatError

U64_MAX = (1 << 64) - 1


def u64(x: int) -> bytes:
    if not 0 <= x <= U64_MAX:
        raise FormatError(f"{x} does not fit in 8 bytes")
    return x.to_bytes(8, "big")


def read_u64(data: bytes) -> int:
    if len(data) != 8:
        raise FormatError(f"expected an 8-byte integer, got {len(data)} bytes")
    return int.from_bytes(data, "big")


def pack_fields(*payloads: bytes) -> bytes:
    return b"".join(u64(len(p)) + p for p in payloads)


class Reader:
    """Cursor over a byte string."""

    def __init__(self, data: bytes, offset: int = 0):
        self.data = data
        self.pos = offset

    def take(self, count: int) -> bytes:
        if count < 0 or count > len(self.data) - self.pos:
            raise FormatError(f"truncated input: need {count} bytes at offset {self.pos}")
        chunk = self.data[self.pos : self.pos + count]
        self.pos += count
        return chunk

    def u64(self) -> int:
        return int.from_bytes(self.take(8), "big")

    def field(self) -> bytes:
        return self.take(self.u64())

    def finish(self) -> None:
        if self.pos != len(self.data):
            raise FormatError(f"{len(self.data) - self.pos} trailing bytes")


def unpack_fields(data: bytes, count: int, offset: int = 0) -> list[bytes]:
    reader = Reader(data, offset)
    fields = [reader.field() for _ in range(count)]
    reader.finish()
    return fields


def int_to_canonical(x: int) -> bytes:
    """Minimal big-endian bytes; zero encodes as the empty string."""
    if x < 0:
        raise FormatError("negative integers are not encodable")
    return x.to_bytes((x.bit_length() + 7) // 8, "big")


def int_from_canonical(data: bytes) -> int:
    if data[:1] == b"\x00":
        raise FormatError("integer has a non-minimal leading zero byte")
    return int.from_bytes(data, "big")
