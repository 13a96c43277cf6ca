"""INSECURE one-time-pad backend for tests.

The "public" key holds the pad itself, so anyone holding it can decrypt.
It exists so scheme-level tests exercise padding logic without lattice
noise.  Never use it to protect data.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..bits import BitString
from ..errors import FormatError, ParameterError
from ..wire import Reader, read_u64, u64
from .base import Key, PkeBackend, RandomSource, expect_fields, register_keys

BACKEND_ID = 255
TAG = b"INSECURE-XOR"


def _pad_fields(pad: BitString) -> list[bytes]:
    return [TAG, u64(pad.length), pad.value.to_bytes((pad.length + 7) // 8, "big")]


def _pad_from_fields(fields: list[bytes]) -> BitString:
    expect_fields(fields, 3, "xor key")
    if fields[0] != TAG:
        raise FormatError("xor key is missing its INSECURE tag")
    k = read_u64(fields[1])
    if len(fields[2]) != (k + 7) // 8:
        raise FormatError("xor pad has the wrong byte length")
    value = int.from_bytes(fields[2], "big")
    if value.bit_length() > k:
        raise FormatError("xor pad has non-zero padding bits")
    return BitString(value, k)


@dataclass(frozen=True)
class InsecureXorPublicKey(Key):
    pad: BitString

    backend_id = BACKEND_ID
    is_secret = False

    def to_fields(self) -> list[bytes]:
        return _pad_fields(self.pad)

    @classmethod
    def from_fields(cls, fields: list[bytes]) -> InsecureXorPublicKey:
        return cls(_pad_from_fields(fields))

    def backend(self) -> InsecureXorBackend:
        return InsecureXorBackend(self.pad.length)


@dataclass(frozen=True)
class InsecureXorSecretKey(Key):
    pad: BitString

    backend_id = BACKEND_ID
    is_secret = True

    def to_fields(self) -> list[bytes]:
        return _pad_fields(self.pad)

    @classmethod
    def from_fields(cls, fields: list[bytes]) -> InsecureXorSecretKey:
        return cls(_pad_from_fields(fields))

    def backend(self) -> InsecureXorBackend:
        return InsecureXorBackend(self.pad.length)


register_keys(InsecureXorPublicKey, InsecureXorSecretKey)


class InsecureXorBackend(PkeBackend):
    """``enc(x) = x XOR pad`` with a fixed ``k``-bit pad.

    Blob layout: fields ``[u64 k, ceil(k/8) bytes of x XOR pad]``.
    """

    backend_id = BACKEND_ID
    name = "insecure-xor"

    def __init__(self, k: int):
        if k < 1:
            raise ParameterError("pad length must be positive")
        self.k = k

    def check_plaintext_length(self, k: int) -> None:
        if k != self.k:
            raise ParameterError(f"xor backend encrypts exactly {self.k} bits, not {k}")

    def gen(self, rng: RandomSource) -> tuple[InsecureXorPublicKey, InsecureXorSecretKey]:
        pad = BitString(rng.getrandbits(self.k), self.k)
        return InsecureXorPublicKey(pad), InsecureXorSecretKey(pad)

    def enc(self, pk: Key, plaintext: BitString, rng: RandomSource | None = None) -> bytes:
        if not isinstance(pk, InsecureXorPublicKey):
            raise ParameterError("xor backend needs an xor public key")
        self.check_plaintext_length(plaintext.length)
        if pk.pad.length != self.k:
            raise ParameterError("key pad length does not match the backend")
        body = (plaintext ^ pk.pad).value.to_bytes((self.k + 7) // 8, "big")
        return u64(8) + u64(self.k) + u64(len(body)) + body

    def dec(self, sk: Key, blob: bytes) -> BitString | None:
        if not isinstance(sk, InsecureXorSecretKey):
            return None
        try:
            reader = Reader(blob)
            k = read_u64(reader.field())
            body = reader.field()
            reader.finish()
        except FormatError:
            return None
        if k != sk.pad.length or len(body) != (k + 7) // 8:
            return None
        value = int.from_bytes(body, "big")
        if value.bit_length() > k:
            return None
        return BitString(value, k) ^ sk.pad


def xor_test_backend(k: int) -> InsecureXorBackend:
    return InsecureXorBackend(k)
