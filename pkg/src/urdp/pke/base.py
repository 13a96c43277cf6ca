"""Backend interface for the trapdoor public-key scheme that encrypts ``r``.

Key files are tagged binaries::

    magic (4) | backend id (1) | version (1) | fields...

with magic ``URPK`` for public and ``URSK`` for secret keys, and each field
framed as in :mod:`urdp.wire`.  Backends register themselves by id so that
:func:`load_key` can dispatch.
"""

from __future__ import annotations

import hashlib
from abc import ABC, abstractmethod
from typing import Any, ClassVar, Protocol

from ..bits import BitString
from ..errors import FormatError
from ..wire import Reader

PUBLIC_MAGIC = b"URPK"
SECRET_MAGIC = b"URSK"
KEY_VERSION = 1


class RandomSource(Protocol):
    """The subset of ``random.Random`` the package relies on."""

    def getrandbits(self, k: int, /) -> int: ...

    def randrange(self, start: int, stop: int = ..., step: int = ..., /) -> int: ...


class Key(ABC):
    """Base for backend keys.  Subclasses set the class attributes."""

    backend_id: ClassVar[int]
    is_secret: ClassVar[bool]

    @abstractmethod
    def to_fields(self) -> list[bytes]: ...

    @classmethod
    @abstractmethod
    def from_fields(cls, fields: list[bytes]) -> Key: ...

    @abstractmethod
    def backend(self) -> PkeBackend:
        """A backend instance configured to match this key."""


class PkeBackend(ABC):
    """A public-key scheme ``(gen, enc, dec)`` over bit-string plaintexts.

    ``enc`` returns a self-describing byte blob; ``dec`` returns ``None`` for
    any blob it cannot decrypt instead of raising.
    """

    backend_id: ClassVar[int]
    name: ClassVar[str]

    @abstractmethod
    def gen(self, rng: RandomSource) -> tuple[Key, Key]: ...

    @abstractmethod
    def enc(self, pk: Key, plaintext: BitString, rng: RandomSource) -> bytes: ...

    @abstractmethod
    def dec(self, sk: Key, blob: bytes) -> BitString | None: ...

    def check_plaintext_length(self, k: int) -> None:
        """Raise :class:`ParameterError` if ``k``-bit plaintexts are unsupported."""


_PUBLIC: dict[int, type[Key]] = {}
_SECRET: dict[int, type[Key]] = {}


def register_keys(public: type[Key], secret: type[Key]) -> None:
    _PUBLIC[public.backend_id] = public
    _SECRET[secret.backend_id] = secret


def dump_key(key: Key) -> bytes:
    magic = SECRET_MAGIC if key.is_secret else PUBLIC_MAGIC
    header = magic + bytes([key.backend_id, KEY_VERSION])
    return header + b"".join(len(f).to_bytes(8, "big") + f for f in key.to_fields())


def load_key(data: bytes, *, secret: bool | None = None) -> Key:
    """Parse a key file.  ``secret`` pins the expected kind when given."""
    reader = Reader(data)
    magic = reader.take(4)
    if magic == PUBLIC_MAGIC:
        registry, is_secret = _PUBLIC, False
    elif magic == SECRET_MAGIC:
        registry, is_secret = _SECRET, True
    else:
        raise FormatError("not a key file (bad magic)")
    if secret is not None and secret != is_secret:
        raise FormatError(f"expected a {'secret' if secret else 'public'} key")
    backend_id, version = reader.take(2)
    if version != KEY_VERSION:
        raise FormatError(f"unsupported key version {version}")
    cls = registry.get(backend_id)
    if cls is None:
        raise FormatError(f"unknown backend id {backend_id}")
    fields: list[bytes] = []
    while reader.pos < len(data):
        fields.append(reader.field())
    return cls.from_fields(fields)


def fingerprint(key: Key) -> str:
    return hashlib.sha256(dump_key(key)).hexdigest()[:16]


def expect_fields(fields: list[Any], count: int, what: str) -> None:
    if len(fields) != count:
        raise FormatError(f"{what}: expected {count} fields, got {len(fields)}")
