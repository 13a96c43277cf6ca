"""The padded cryptosystem: ``C1 = y * h`` and ``C2 = Enc(pk, r)``.

``y`` is the integer value of the encoded message and ``h`` the weight of
the selector ``r``.  Decryption recovers ``r`` through the backend, divides
``C1`` by ``h``, re-expands ``y`` to the ``ell`` bits announced in the header,
re-derives the block lengths and runs the extractor.  Every failed check
yields the same :data:`REJECT` value; the reason is kept on the object for
tests and logs but takes no part in equality.

Ciphertext wire format::

    b"URDP" | 0x01 | backend id (1) | n (u64) | ell (u64)
    | len (u64) + canonical big-endian c1 | len (u64) + backend blob
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bits import BitString, from_integer, hamming_weight
from .errors import BitOverflowError, FormatError, PaddingError, ParameterError
from .padding import (
    DEFAULT_S_MAX,
    EncodedMessage,
    EncodingParams,
    SelectorVector,
    derive_params,
    encode,
    extract,
)
from .pke.base import Key, PkeBackend, RandomSource
from .pke.lwe import LweBackend
from .wire import Reader, int_from_canonical, int_to_canonical, u64

MAGIC = b"URDP"
VERSION = 1
DEFAULT_K = 18
# decryption refuses headers announcing more message bits than this
DEFAULT_MAX_MESSAGE_BITS = 1 << 31


@dataclass(frozen=True)
class SchemeConfig:
    k: int = DEFAULT_K
    s_max: int = DEFAULT_S_MAX
    backend: PkeBackend = field(default_factory=LweBackend)
    max_message_bits: int = DEFAULT_MAX_MESSAGE_BITS

    def __post_init__(self) -> None:
        if self.k < 3:
            raise ParameterError(f"selector length k must be at least 3, got {self.k}")
        if self.s_max < 1:
            raise ParameterError("s_max must be at least 1")
        if self.max_message_bits < 1:
            raise ParameterError("max_message_bits must be positive")
        self.backend.check_plaintext_length(self.k)


@dataclass(frozen=True)
class UrdpCiphertext:
    n: int
    ell: int
    c1: int
    c2: bytes
    backend_id: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.ell < self.n:
            raise ParameterError(f"invalid header n={self.n}, ell={self.ell}")
        if self.c1 < 0:
            raise ParameterError("c1 must be non-negative")
        if not 0 <= self.backend_id <= 255:
            raise ParameterError("backend id must fit in one byte")

    def to_bytes(self) -> bytes:
        return serialize(self)

    @classmethod
    def from_bytes(cls, data: bytes) -> UrdpCiphertext:
        return deserialize(data)


@dataclass(frozen=True)
class Rejection:
    """The decryption failure symbol.  All rejections compare equal."""

    reason: str = field(default="", compare=False)

    def __repr__(self) -> str:
        return "⊥"


REJECT = Rejection()


@dataclass(frozen=True)
class EncryptionRecord:
    """Intermediate values of one encryption, for experiments and tests."""

    selector: SelectorVector
    params: EncodingParams
    encoded: EncodedMessage

    @property
    def y(self) -> int:
        return self.encoded.payload.value


def keygen(config: SchemeConfig, rng: RandomSource) -> tuple[Key, Key]:
    return config.backend.gen(rng)


def sample_selector(k: int, rng: RandomSource) -> SelectorVector:
    while True:
        r = BitString(rng.getrandbits(k), k)
        if 0 < hamming_weight(r) < k:
            return SelectorVector(r)


def encrypt_detailed(
    pk: Key,
    m: BitString,
    config: SchemeConfig,
    rng: RandomSource,
    *,
    selector: SelectorVector | None = None,
    rob_length: int | None = None,
    pad_source=None,
) -> tuple[UrdpCiphertext, EncryptionRecord]:
    """Encrypt and also return the encoding intermediates.

    ``selector``, ``rob_length`` and ``pad_source`` override the random
    choices; everything not overridden is drawn from ``rng`` in the order
    selector, ROB length, RBS and ROB bits, backend coins.
    """
    backend = config.backend
    if pk.backend_id != backend.backend_id:
        raise ParameterError("public key does not belong to the configured backend")
    if not 1 <= m.length <= config.max_message_bits:
        raise ParameterError(f"message length {m.length} outside [1, {config.max_message_bits}]")
    sel = selector if selector is not None else sample_selector(config.k, rng)
    if sel.k != config.k:
        raise ParameterError(f"selector has {sel.k} bits, config says k={config.k}")
    s = rob_length if rob_length is not None else 1 + rng.randrange(config.s_max)
    if not 1 <= s <= config.s_max:
        raise ParameterError(f"ROB length {s} outside [1, {config.s_max}]")

    params = EncodingParams.for_message(m.length, sel.h, s)
    encoded = encode(m, sel, params, pad_source if pad_source is not None else rng)
    c1 = encoded.payload.value * sel.h
    c2 = backend.enc(pk, sel.r, rng)
    ct = UrdpCiphertext(m.length, encoded.length, c1, c2, backend.backend_id)
    return ct, EncryptionRecord(sel, params, encoded)


def encrypt(
    pk: Key,
    m: BitString,
    config: SchemeConfig,
    rng: RandomSource,
    **overrides,
) -> UrdpCiphertext:
    return encrypt_detailed(pk, m, config, rng, **overrides)[0]


def decrypt(sk: Key, c: UrdpCiphertext, config: SchemeConfig) -> BitString | Rejection:
    backend = config.backend
    if c.backend_id != backend.backend_id or sk.backend_id != backend.backend_id:
        return Rejection("backend")
    if c.n > config.max_message_bits:
        return Rejection("header")
    r = backend.dec(sk, c.c2)
    if r is None:
        return Rejection("backend")
    if r.length != config.k:
        return Rejection("selector_length")
    h = hamming_weight(r)
    if not 0 < h < config.k:
        return Rejection("weight")
    y, remainder = divmod(c.c1, h)
    if remainder:
        return Rejection("divisibility")
    try:
        encoded = from_integer(y, c.ell)
    except BitOverflowError:
        return Rejection("y_length")
    try:
        params = derive_params(c.n, config.k, h, c.ell, config.s_max)
    except PaddingError as exc:
        return Rejection(exc.reason)
    return extract(EncodedMessage(encoded), SelectorVector(r), params)


def serialize(c: UrdpCiphertext) -> bytes:
    c1 = int_to_canonical(c.c1)
    return b"".join(
        [
            MAGIC,
            bytes([VERSION, c.backend_id]),
            u64(c.n),
            u64(c.ell),
            u64(len(c1)),
            c1,
            u64(len(c.c2)),
            c.c2,
        ]
    )


def deserialize(data: bytes) -> UrdpCiphertext:
    reader = Reader(data)
    if reader.take(4) != MAGIC:
        raise FormatError("not a URDP ciphertext (bad magic)")
    version, backend_id = reader.take(2)
    if version != VERSION:
        raise FormatError(f"unsupported ciphertext version {version}")
    n = reader.u64()
    ell = reader.u64()
    c1 = int_from_canonical(reader.field())
    c2 = reader.field()
    reader.finish()
    try:
        return UrdpCiphertext(n, ell, c1, c2, backend_id)
    except ParameterError as exc:
        raise FormatError(str(exc)) from exc
