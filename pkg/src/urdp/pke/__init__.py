"""Pluggable public-key backends used to encrypt the selector vector."""

from .base import Key, PkeBackend, RandomSource, dump_key, fingerprint, load_key
from .lwe import LweBackend, LweParams, LwePublicKey, LweSecretKey, lwe_dec_bit, lwe_dec_bits, lwe_enc_bit, lwe_enc_bits, lwe_gen
from .xor import InsecureXorBackend, InsecureXorPublicKey, InsecureXorSecretKey, xor_test_backend

BACKENDS = {LweBackend.backend_id: LweBackend.name, InsecureXorBackend.backend_id: InsecureXorBackend.name}

__all__ = [
    "BACKENDS",
    "InsecureXorBackend",
    "InsecureXorPublicKey",
    "InsecureXorSecretKey",
    "Key",
    "LweBackend",
    "LweParams",
    "LwePublicKey",
    "LweSecretKey",
    "PkeBackend",
    "RandomSource",
    "dump_key",
    "fingerprint",
    "load_key",
    "lwe_dec_bit",
    "lwe_dec_bits",
    "lwe_enc_bit",
    "lwe_enc_bits",
    "lwe_gen",
    "xor_test_backend",
]
