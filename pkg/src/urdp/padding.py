"""Random data padding: block permutation with random filler blocks.

A message ``m`` of ``n`` bits is split into ``h`` equal blocks of
``v = ceil(n/h)`` bits (the last block topped up with a random bit string,
the RBS), where ``h`` is the Hamming weight of a ``k``-bit selector ``r``.
The encoded message has ``k`` slots: slot ``i`` carries the next message
block when ``r_i = 1`` and a fresh random obscure block (ROB) of ``s`` bits
when ``r_i = 0``.

Randomness for the RBS and the ROBs is drawn from a caller-supplied source
exposing ``getrandbits(n)`` (``random.Random`` and ``random.SystemRandom``
both qualify).  The RBS is drawn first, then one ROB per zero of ``r``,
left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Protocol

from .bits import EMPTY, BitString, hamming_weight
from .errors import PaddingError, ParameterError

__all__ = [
    "DEFAULT_S_MAX",
    "BitSource",
    "EncodedMessage",
    "EncodingParams",
    "SelectorVector",
    "ceil_div",
    "derive_params",
    "encode",
    "encoded_length",
    "extract",
    "information_rate",
    "setup_blocks",
]

DEFAULT_S_MAX = 16


class BitSource(Protocol):
    def getrandbits(self, k: int, /) -> int: ...


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


@dataclass(frozen=True)
class SelectorVector:
    """The selector ``r``; its 1-positions carry message blocks."""

    r: BitString
    h: int = field(init=False)

    def __post_init__(self) -> None:
        h = hamming_weight(self.r)
        if not 0 < h < self.r.length:
            raise ParameterError(
                f"selector weight must satisfy 0 < h < k, got h={h}, k={self.r.length}"
            )
        object.__setattr__(self, "h", h)

    @property
    def k(self) -> int:
        return self.r.length

    @classmethod
    def from_str(cls, text: str) -> SelectorVector:
        return cls(BitString.from_str(text))


@dataclass(frozen=True)
class EncodingParams:
    n: int
    v: int
    s: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError("message length must be at least 1 bit")
        if self.v < 1 or self.s < 1:
            raise ParameterError(f"block lengths must be positive (v={self.v}, s={self.s})")

    @classmethod
    def for_message(cls, n: int, h: int, s: int) -> EncodingParams:
        if h < 1:
            raise ParameterError("h must be positive")
        if n < 1:
            raise ParameterError("message length must be at least 1 bit")
        return cls(n, ceil_div(n, h), s)


@dataclass(frozen=True)
class EncodedMessage:
    payload: BitString

    @property
    def length(self) -> int:
        return self.payload.length


def encoded_length(h: int, k: int, v: int, s: int) -> int:
    return h * v + (k - h) * s


def information_rate(n: int, k: int, h: int, s: int) -> float:
    """Plaintext bits over ciphertext bits, counting the selector as ``k`` bits."""
    return n / (n + (k - h) * s + k)


def _check_block_length(params: EncodingParams, h: int) -> None:
    if params.v != ceil_div(params.n, h):
        raise ParameterError(f"v={params.v} does not equal ceil({params.n}/{h})")


def setup_blocks(m: BitString, h: int, rbs: BitString = EMPTY) -> list[BitString]:
    """Split ``m || rbs`` into ``h`` blocks of ``ceil(n/h)`` bits."""
    if h < 1:
        raise ParameterError("h must be positive")
    n = m.length
    if n < 1:
        raise ParameterError("message length must be at least 1 bit")
    v = ceil_div(n, h)
    if rbs.length != h * v - n:
        raise ParameterError(f"RBS must have {h * v - n} bits, got {rbs.length}")
    padded = (m.value << rbs.length) | rbs.value
    mask = (1 << v) - 1
    return [BitString((padded >> (v * (h - 1 - i))) & mask, v) for i in range(h)]


def encode(
    m: BitString, sel: SelectorVector, params: EncodingParams, pad_source: BitSource
) -> EncodedMessage:
    if m.length != params.n:
        raise ParameterError(f"message has {m.length} bits, params say {params.n}")
    h, k = sel.h, sel.k
    _check_block_length(params, h)
    v, s = params.v, params.s

    rbs_len = h * v - params.n
    rbs = BitString(pad_source.getrandbits(rbs_len), rbs_len)
    blocks = setup_blocks(m, h, rbs)

    acc = 0
    nxt = 0
    for bit in sel.r:
        if bit:
            acc = (acc << v) | blocks[nxt].value
            nxt += 1
        else:
            acc = (acc << s) | pad_source.getrandbits(s)
    return EncodedMessage(BitString(acc, encoded_length(h, k, v, s)))


def extract(encoded: EncodedMessage, sel: SelectorVector, params: EncodingParams) -> BitString:
    """Drop the ROBs, reassemble the message blocks and strip the RBS."""
    h, k = sel.h, sel.k
    _check_block_length(params, h)
    v, s = params.v, params.s
    ell = encoded_length(h, k, v, s)
    if encoded.length != ell:
        raise ParameterError(f"encoded message has {encoded.length} bits, expected {ell}")

    value = encoded.payload.value
    vmask = (1 << v) - 1
    pos = ell
    acc = 0
    for bit in sel.r:
        if bit:
            pos -= v
            acc = (acc << v) | ((value >> pos) & vmask)
        else:
            pos -= s
    return BitString(acc >> (h * v - params.n), params.n)


def derive_params(n: int, k: int, h: int, ell: int, s_max: int = DEFAULT_S_MAX) -> EncodingParams:
    """Recover ``(n, v, s)`` from a received encoded length or raise :class:`PaddingError`."""
    if not 0 < h < k:
        raise PaddingError("weight", f"need 0 < h < k, got h={h}, k={k}")
    if n < 1:
        raise PaddingError("header", "message length must be at least 1 bit")
    v = ceil_div(n, h)
    rest = ell - h * v
    if rest < 0:
        raise PaddingError("length", f"encoded length {ell} shorter than h*v={h * v}")
    s, remainder = divmod(rest, k - h)
    if remainder:
        raise PaddingError("s_not_integral", f"({ell}-{h * v})/{k - h} is not an integer")
    if not 1 <= s <= s_max:
        raise PaddingError("s_range", f"s={s} outside [1, {s_max}]")
    return EncodingParams(n, v, s)
