"""Desk-scale Regev-style LWE encryption of individual bits.

Public key: ``A`` (``samples_per_bit`` x ``dimension``) and ``b = A s + e``
mod ``q`` with errors uniform on ``[-error_bound, error_bound]``.  A bit is
encrypted by summing a random subset of the public rows and adding
``bit * floor(q/2)`` to the ``b`` part.

The accumulated error is at most ``samples_per_bit * error_bound``, and the
parameter checks force that below ``(q - 4) / 4``, so decryption never
fails.  Nothing here is sized for real security.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..bits import BitString
from ..errors import FormatError, ParameterError
from ..wire import Reader, read_u64, u64
from .base import Key, PkeBackend, RandomSource, expect_fields, register_keys

BACKEND_ID = 1

# entries are stored as big-endian uint64
_WIRE_DTYPE = np.dtype(">u8")


@lru_cache(maxsize=64)
def _is_prime(q: int) -> bool:
    from sympy import isprime

    return bool(isprime(q))


@dataclass(frozen=True)
class LweParams:
    dimension: int = 32
    modulus: int = 12289
    error_bound: int = 4
    samples_per_bit: int = 32

    def __post_init__(self) -> None:
        d, q, bound, m = self.dimension, self.modulus, self.error_bound, self.samples_per_bit
        if d < 1 or m < 1 or bound < 0:
            raise ParameterError(f"invalid LWE sizes: dimension={d}, samples={m}, error_bound={bound}")
        if q < 3 or q % 2 == 0 or not _is_prime(q):
            raise ParameterError(f"modulus must be an odd prime, got {q}")
        if q <= 4 * d * bound + 4:
            raise ParameterError(
                f"modulus {q} must exceed 4*dimension*error_bound+4 = {4 * d * bound + 4}"
            )
        if m > d:
            raise ParameterError("samples_per_bit may not exceed dimension (error-sum bound)")
        # keeps int64 dot products exact
        if (q - 1) ** 2 * max(d, m) >= 1 << 62:
            raise ParameterError(f"modulus {q} too large for exact int64 arithmetic")

    @property
    def half(self) -> int:
        return self.modulus // 2

    def to_fields(self) -> list[bytes]:
        return [u64(self.dimension), u64(self.modulus), u64(self.error_bound), u64(self.samples_per_bit)]

    @classmethod
    def from_fields(cls, fields: list[bytes]) -> LweParams:
        try:
            return cls(*(read_u64(f) for f in fields))
        except ParameterError as exc:
            raise FormatError(f"invalid LWE parameters: {exc}") from exc


def _numpy_rng(rng: RandomSource) -> np.random.Generator:
    return np.random.default_rng(rng.getrandbits(128))


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def _array_bytes(a: np.ndarray) -> bytes:
    return a.astype(_WIRE_DTYPE).tobytes()


def _array_from(data: bytes, count: int, q: int) -> np.ndarray:
    if len(data) != 8 * count:
        raise FormatError(f"expected {count} entries, got {len(data)} bytes")
    raw = np.frombuffer(data, dtype=_WIRE_DTYPE)
    if raw.size and raw.max() >= q:
        raise FormatError("entry not reduced modulo q")
    return raw.astype(np.int64)


@dataclass(frozen=True, eq=False)
class LwePublicKey(Key):
    params: LweParams
    A: np.ndarray
    b: np.ndarray

    backend_id = BACKEND_ID
    is_secret = False

    def to_fields(self) -> list[bytes]:
        return self.params.to_fields() + [_array_bytes(self.A), _array_bytes(self.b)]

    @classmethod
    def from_fields(cls, fields: list[bytes]) -> LwePublicKey:
        expect_fields(fields, 6, "LWE public key")
        p = LweParams.from_fields(fields[:4])
        m, d, q = p.samples_per_bit, p.dimension, p.modulus
        A = _array_from(fields[4], m * d, q).reshape(m, d)
        b = _array_from(fields[5], m, q)
        return cls(p, _frozen(A), _frozen(b))

    def backend(self) -> LweBackend:
        return LweBackend(self.params)


@dataclass(frozen=True, eq=False)
class LweSecretKey(Key):
    params: LweParams
    s: np.ndarray

    backend_id = BACKEND_ID
    is_secret = True

    def to_fields(self) -> list[bytes]:
        return self.params.to_fields() + [_array_bytes(self.s)]

    @classmethod
    def from_fields(cls, fields: list[bytes]) -> LweSecretKey:
        expect_fields(fields, 5, "LWE secret key")
        p = LweParams.from_fields(fields[:4])
        return cls(p, _frozen(_array_from(fields[4], p.dimension, p.modulus)))

    def backend(self) -> LweBackend:
        return LweBackend(self.params)


register_keys(LwePublicKey, LweSecretKey)


def lwe_gen(params: LweParams, rng: RandomSource) -> tuple[LwePublicKey, LweSecretKey]:
    g = _numpy_rng(rng)
    q, d, m, bound = params.modulus, params.dimension, params.samples_per_bit, params.error_bound
    s = g.integers(0, q, size=d)
    A = g.integers(0, q, size=(m, d))
    e = g.integers(-bound, bound + 1, size=m)
    b = (A @ s + e) % q
    return LwePublicKey(params, _frozen(A), _frozen(b)), LweSecretKey(params, _frozen(s))


def lwe_enc_bits(pk: LwePublicKey, bits: np.ndarray, rng: RandomSource) -> tuple[np.ndarray, np.ndarray]:
    """Encrypt a vector of bits; row ``i`` of the result encrypts ``bits[i]``."""
    bits = np.asarray(bits, dtype=np.int64)
    p = pk.params
    x = _numpy_rng(rng).integers(0, 2, size=(bits.size, p.samples_per_bit))
    a = (x @ pk.A) % p.modulus
    c = (x @ pk.b + bits * p.half) % p.modulus
    return a, c


def lwe_dec_bits(sk: LweSecretKey, a: np.ndarray, c: np.ndarray) -> np.ndarray:
    q = sk.params.modulus
    d = (np.asarray(c, dtype=np.int64) - np.asarray(a, dtype=np.int64) @ sk.s) % q
    # nearest of {0, floor(q/2)} on the cycle
    return ((4 * d > q) & (4 * d < 3 * q)).astype(np.int64)


def lwe_enc_bit(pk: LwePublicKey, bit: int, rng: RandomSource) -> tuple[np.ndarray, int]:
    a, c = lwe_enc_bits(pk, np.array([bit]), rng)
    return a[0], int(c[0])


def lwe_dec_bit(sk: LweSecretKey, ciphertext: tuple[np.ndarray, int]) -> int:
    a, c = ciphertext
    return int(lwe_dec_bits(sk, np.asarray(a)[None, :], np.array([c]))[0])


class LweBackend(PkeBackend):
    """Bitwise LWE: a ``k``-bit plaintext becomes ``k`` independent encryptions.

    Blob layout: fields ``[u64 k, u64 dimension, a-vectors, c-values]``.
    """

    backend_id = BACKEND_ID
    name = "lwe"

    def __init__(self, params: LweParams | None = None):
        self.params = params or LweParams()

    def gen(self, rng: RandomSource) -> tuple[LwePublicKey, LweSecretKey]:
        return lwe_gen(self.params, rng)

    def enc(self, pk: Key, plaintext: BitString, rng: RandomSource) -> bytes:
        if not isinstance(pk, LwePublicKey):
            raise ParameterError("LWE backend needs an LWE public key")
        bits = np.fromiter(plaintext, dtype=np.int64, count=plaintext.length)
        a, c = lwe_enc_bits(pk, bits, rng)
        fields = [u64(plaintext.length), u64(pk.params.dimension), _array_bytes(a), _array_bytes(c)]
        return b"".join(u64(len(f)) + f for f in fields)

    def dec(self, sk: Key, blob: bytes) -> BitString | None:
        if not isinstance(sk, LweSecretKey):
            return None
        try:
            reader = Reader(blob)
            k = read_u64(reader.field())
            d = read_u64(reader.field())
            if d != sk.params.dimension or k > len(blob):
                return None
            q = sk.params.modulus
            a = _array_from(reader.field(), k * d, q).reshape(k, d)
            c = _array_from(reader.field(), k, q)
            reader.finish()
        except FormatError:
            return None
        return BitString.from_bits(int(x) for x in lwe_dec_bits(sk, a, c))
