"""Executable IND-CCA2 experiment and ciphertext-tampering scenarios.

The experiment runs key generation, lets the adversary pick two equal-length
messages with a decryption oracle, encrypts one of them at random and hands
the challenge back together with an oracle that refuses exactly the
challenge (compared as serialized bytes).

The tampering scenarios build a challenge honestly, derive a related
ciphertext from it and ask the real decryptor what it makes of it:

``game1``
    fresh ``C2`` encrypting some ``r' != r*`` of the same weight, and
    ``C1 = h* * y'`` for a uniform ``ell*``-bit ``y'``.
``game2``
    keep ``C1*``, fresh ``C2`` as in ``game1`` (or, with
    ``c2_mode="bitflip"``, ``C2*`` with one bit flipped).
``game3``
    keep ``C2*``, ``C1`` uniform over ``ell*``-bit integers, ``C1 != C1*``.

Outcomes are counted, never assumed.
"""

from __future__ import annotations

import json
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from statistics import NormalDist
from typing import Any, Callable, Iterator, Union

from .bits import BitString
from .errors import ExperimentError, ParameterError
from .pke.base import Key, RandomSource
from .scheme import (
    Rejection,
    SchemeConfig,
    SelectorVector,
    UrdpCiphertext,
    decrypt,
    encrypt,
    encrypt_detailed,
    keygen,
    serialize,
)

VARIANTS = ("game1", "game2", "game3")
Z95 = NormalDist().inv_cdf(0.975)


class Refused:
    """Oracle answer for a query equal to the challenge ciphertext."""

    def __repr__(self) -> str:
        return "REFUSED"


REFUSED = Refused()

OracleAnswer = Union[BitString, Rejection, Refused]
Oracle = Callable[[UrdpCiphertext], OracleAnswer]


@dataclass
class GameTranscript:
    m0: BitString | None = None
    m1: BitString | None = None
    b: int | None = None
    c_star: UrdpCiphertext | None = None
    queries: list[tuple[str, UrdpCiphertext, OracleAnswer]] = field(default_factory=list)
    b_guess: int | None = None

    @property
    def refusals(self) -> int:
        return sum(1 for _, _, ans in self.queries if ans is REFUSED)


class Adversary(ABC):
    """Two-stage adversary.  ``state`` is whatever ``phase1`` wants to keep."""

    @abstractmethod
    def phase1(self, pk: Key, oracle: Oracle) -> tuple[BitString, BitString, Any]: ...

    @abstractmethod
    def phase2(self, c_star: UrdpCiphertext, state: Any, oracle: Oracle) -> int: ...


class _DecryptionOracle:
    def __init__(self, sk: Key, config: SchemeConfig, transcript: GameTranscript):
        self.sk = sk
        self.config = config
        self.transcript = transcript
        self.phase = "phase1"
        self.challenge_bytes: bytes | None = None

    def __call__(self, c: UrdpCiphertext) -> OracleAnswer:
        if not isinstance(c, UrdpCiphertext):
            raise ExperimentError(f"oracle queried with {type(c).__name__}, not a ciphertext")
        if self.challenge_bytes is not None and serialize(c) == self.challenge_bytes:
            answer: OracleAnswer = REFUSED
        else:
            answer = decrypt(self.sk, c, self.config)
        self.transcript.queries.append((self.phase, c, answer))
        return answer


def run_experiment(
    config: SchemeConfig,
    adversary: Adversary,
    rng: RandomSource,
    *,
    keys: tuple[Key, Key] | None = None,
) -> tuple[int, GameTranscript]:
    """One run of the IND-CCA2 experiment; returns ``(win, transcript)``.

    ``keys`` replaces key generation, which lets tests hand a secret key to
    an adversary out of band.
    """
    pk, sk = keys if keys is not None else keygen(config, rng)
    transcript = GameTranscript()
    oracle = _DecryptionOracle(sk, config, transcript)

    result = adversary.phase1(pk, oracle)
    try:
        m0, m1, state = result
    except (TypeError, ValueError):
        raise ExperimentError("phase1 must return (m0, m1, state)") from None
    if not isinstance(m0, BitString) or not isinstance(m1, BitString):
        raise ExperimentError("challenge messages must be bit strings")
    if m0.length != m1.length:
        raise ExperimentError(f"challenge messages differ in length ({m0.length} vs {m1.length})")
    if m0.length < 1:
        raise ExperimentError("challenge messages must be non-empty")
    transcript.m0, transcript.m1 = m0, m1

    b = rng.getrandbits(1)
    c_star = encrypt(pk, m1 if b else m0, config, rng)
    transcript.b, transcript.c_star = b, c_star

    oracle.phase = "phase2"
    oracle.challenge_bytes = serialize(c_star)
    guess = adversary.phase2(c_star, state, oracle)
    if guess not in (0, 1):
        raise ExperimentError(f"guess must be 0 or 1, got {guess!r}")
    transcript.b_guess = int(guess)
    return int(guess == b), transcript


@dataclass(frozen=True)
class AdvantageEstimate:
    wins: int
    trials: int

    @property
    def win_rate(self) -> float:
        return self.wins / self.trials

    @property
    def estimate(self) -> float:
        return abs(self.win_rate - 0.5)

    @property
    def half_width(self) -> float:
        p = self.win_rate
        return Z95 * (p * (1 - p) / self.trials) ** 0.5

    def __iter__(self) -> Iterator[float]:
        return iter((self.estimate, self.half_width))


def estimate_advantage(
    config: SchemeConfig,
    adversary: Adversary,
    trials: int,
    rng: RandomSource,
    *,
    keys: tuple[Key, Key] | None = None,
    on_trial: Callable[[int, int, GameTranscript], None] | None = None,
) -> AdvantageEstimate:
    """``|win rate - 1/2|`` over independent runs, with a 95% normal half-width."""
    if trials < 100:
        raise ParameterError(f"need at least 100 trials, got {trials}")
    wins = 0
    for i in range(trials):
        win, transcript = run_experiment(config, adversary, rng, keys=keys)
        wins += win
        if on_trial is not None:
            on_trial(i, win, transcript)
    return AdvantageEstimate(wins, trials)


# --- reference adversaries -------------------------------------------------


def _random_message(n: int, rng: RandomSource) -> BitString:
    return BitString(rng.getrandbits(n), n)


class CoinFlipAdversary(Adversary):
    """Ignores everything and guesses uniformly."""

    def __init__(self, rng: RandomSource, n: int = 64):
        self.rng = rng
        self.n = n

    def phase1(self, pk, oracle):
        return _random_message(self.n, self.rng), _random_message(self.n, self.rng), None

    def phase2(self, c_star, state, oracle):
        return self.rng.getrandbits(1)


class ConstantAdversary(CoinFlipAdversary):
    """Always answers the same bit."""

    def __init__(self, rng: RandomSource, guess: int = 0, n: int = 64):
        super().__init__(rng, n)
        self.guess = guess

    def phase2(self, c_star, state, oracle):
        return self.guess


class ReplayAdversary(CoinFlipAdversary):
    """Submits the challenge itself to the oracle, then guesses at random."""

    def phase2(self, c_star, state, oracle):
        oracle(c_star)
        return self.rng.getrandbits(1)


class HonestQueryAdversary(CoinFlipAdversary):
    """Before the challenge, encrypts ``m0`` itself and asks the oracle to decrypt it."""

    def __init__(self, rng: RandomSource, config: SchemeConfig, n: int = 64):
        super().__init__(rng, n)
        self.config = config
        self.answers: list[tuple[BitString, OracleAnswer]] = []

    def phase1(self, pk, oracle):
        m0, m1, _ = super().phase1(pk, oracle)
        self.answers.append((m0, oracle(encrypt(pk, m0, self.config, self.rng))))
        return m0, m1, None


class OmniscientAdversary(Adversary):
    """Holds the secret key and decrypts the challenge directly."""

    def __init__(self, sk: Key, config: SchemeConfig, rng: RandomSource, n: int = 64):
        self.sk = sk
        self.config = config
        self.rng = rng
        self.n = n

    def phase1(self, pk, oracle):
        m0 = _random_message(self.n, self.rng)
        m1 = BitString(m0.value ^ ((1 << self.n) - 1), self.n)
        return m0, m1, (m0, m1)

    def phase2(self, c_star, state, oracle):
        m0, m1 = state
        return int(decrypt(self.sk, c_star, self.config) == m1)


ADVERSARIES = {
    "coinflip": CoinFlipAdversary,
    "zero": lambda rng, n=64: ConstantAdversary(rng, 0, n),
    "one": lambda rng, n=64: ConstantAdversary(rng, 1, n),
    "replay": ReplayAdversary,
}


# --- tampering scenarios ---------------------------------------------------


@dataclass
class TamperStats:
    variant: str
    trials: int = 0
    rejected: int = 0
    wrong_message: int = 0
    recovered_mb: int = 0
    reasons: Counter = field(default_factory=Counter)
    records: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "type": "summary",
            "variant": self.variant,
            "trials": self.trials,
            "rejected": self.rejected,
            "wrong_message": self.wrong_message,
            "recovered_mb": self.recovered_mb,
            "reasons": dict(sorted(self.reasons.items())),
        }

    def report_lines(self) -> Iterator[str]:
        for rec in self.records:
            yield json.dumps(rec, sort_keys=True)
        yield json.dumps(self.summary(), sort_keys=True)


def _same_weight_selector(sel: SelectorVector, rng: RandomSource) -> SelectorVector:
    """Uniform selector of the same weight, different from ``sel``."""
    k, h = sel.k, sel.h
    while True:
        pos = list(range(k))
        for i in range(h):
            j = i + rng.randrange(k - i)
            pos[i], pos[j] = pos[j], pos[i]
        ones = set(pos[:h])
        r = BitString.from_bits(1 if i in ones else 0 for i in range(k))
        if r != sel.r:
            return SelectorVector(r)


def _flip_random_bit(blob: bytes, rng: RandomSource) -> bytes:
    pos = rng.randrange(8 * len(blob))
    out = bytearray(blob)
    out[pos // 8] ^= 0x80 >> (pos % 8)
    return bytes(out)


def _tamper(variant, c_star, record, pk, config, rng, c2_mode):
    h = record.selector.h
    if variant == "game3":
        while True:
            c1 = rng.getrandbits(c_star.ell)
            if c1 != c_star.c1:
                break
        return UrdpCiphertext(c_star.n, c_star.ell, c1, c_star.c2, c_star.backend_id)

    if c2_mode == "bitflip":
        c2 = _flip_random_bit(c_star.c2, rng)
    else:
        r_prime = _same_weight_selector(record.selector, rng)
        c2 = config.backend.enc(pk, r_prime.r, rng)
    if variant == "game2":
        c1 = c_star.c1
    else:
        c1 = h * rng.getrandbits(c_star.ell)
    return UrdpCiphertext(c_star.n, c_star.ell, c1, c2, c_star.backend_id)


def scenario_tamper(
    config: SchemeConfig,
    variant: str,
    trials: int,
    rng: RandomSource,
    *,
    n: int = 256,
    keys: tuple[Key, Key] | None = None,
    c2_mode: str = "reencrypt",
) -> TamperStats:
    """Run ``trials`` tampering attempts against fresh challenges."""
    if variant not in VARIANTS:
        raise ParameterError(f"unknown variant {variant!r}; choose from {VARIANTS}")
    if c2_mode not in ("reencrypt", "bitflip"):
        raise ParameterError(f"unknown c2_mode {c2_mode!r}")
    if trials < 1:
        raise ParameterError(f"need at least 1 trial, got {trials}")
    if n < 1:
        raise ParameterError("message length must be positive")

    pk, sk = keys if keys is not None else keygen(config, rng)
    stats = TamperStats(variant)
    for i in range(trials):
        m0, m1 = _random_message(n, rng), _random_message(n, rng)
        m_b = m1 if rng.getrandbits(1) else m0
        c_star, record = encrypt_detailed(pk, m_b, config, rng)
        star_bytes = serialize(c_star)
        while True:
            tampered = _tamper(variant, c_star, record, pk, config, rng, c2_mode)
            if serialize(tampered) != star_bytes:
                break

        answer = decrypt(sk, tampered, config)
        if isinstance(answer, Rejection):
            outcome, reason = "rejected", answer.reason
            stats.rejected += 1
        elif answer == m_b:
            outcome, reason = "recovered_mb", "message"
            stats.recovered_mb += 1
        else:
            outcome, reason = "wrong_message", "message"
            stats.wrong_message += 1
        stats.trials += 1
        stats.reasons[reason] += 1
        stats.records.append({"type": "trial", "variant": variant, "trial": i, "outcome": outcome, "reason": reason})
    return stats
