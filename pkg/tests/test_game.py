import json
import random

import pytest

from urdp.bits import BitString
from urdp.errors import ExperimentError, ParameterError
from urdp.game import (
    REFUSED,
    Adversary,
    CoinFlipAdversary,
    ConstantAdversary,
    HonestQueryAdversary,
    OmniscientAdversary,
    ReplayAdversary,
    estimate_advantage,
    run_experiment,
    scenario_tamper,
)
from urdp.pke import InsecureXorBackend
from urdp.scheme import Rejection, SchemeConfig, UrdpCiphertext, keygen, serialize


@pytest.fixture
def xor_config():
    return SchemeConfig(k=18, backend=InsecureXorBackend(18))


def test_experiment_transcript(xor_config):
    rng = random.Random(1)
    win, t = run_experiment(xor_config, CoinFlipAdversary(random.Random(2)), rng)
    assert win in (0, 1)
    assert t.m0.length == t.m1.length == 64
    assert t.b in (0, 1) and t.b_guess in (0, 1)
    assert win == int(t.b == t.b_guess)
    assert t.queries == []


def test_experiment_is_reproducible(xor_config):
    def run():
        return run_experiment(xor_config, ReplayAdversary(random.Random(5)), random.Random(4))

    (w1, t1), (w2, t2) = run(), run()
    assert w1 == w2
    assert serialize(t1.c_star) == serialize(t2.c_star)
    assert (t1.m0, t1.m1, t1.b, t1.b_guess) == (t2.m0, t2.m1, t2.b, t2.b_guess)


def test_replay_is_refused_and_experiment_continues(xor_config):
    rng = random.Random(3)
    for _ in range(20):
        win, t = run_experiment(xor_config, ReplayAdversary(rng), rng)
        assert [(phase, ans) for phase, _, ans in t.queries] == [("phase2", REFUSED)]
        assert t.b_guess is not None


class FlipAndQuery(Adversary):
    """Queries the challenge with the low bit of c1 flipped, then the challenge itself."""

    def __init__(self):
        self.answers = []

    def phase1(self, pk, oracle):
        return BitString(0, 32), BitString(1, 32), None

    def phase2(self, c_star, state, oracle):
        mutated = UrdpCiphertext(c_star.n, c_star.ell, c_star.c1 ^ 1, c_star.c2, c_star.backend_id)
        self.answers.append(oracle(mutated))
        self.answers.append(oracle(c_star))
        return 0


def test_only_exact_challenge_is_refused(xor_config):
    adv = FlipAndQuery()
    run_experiment(xor_config, adv, random.Random(6))
    assert adv.answers[0] is not REFUSED
    assert isinstance(adv.answers[0], (Rejection, BitString))
    assert adv.answers[1] is REFUSED


def test_oracle_answers_honest_queries(xor_config):
    rng = random.Random(7)
    adv = HonestQueryAdversary(rng, xor_config)
    for _ in range(10):
        run_experiment(xor_config, adv, rng)
    assert all(answer == m0 for m0, answer in adv.answers)


class BadAdversary(Adversary):
    def __init__(self, m0, m1, guess=0, query=None):
        self.m0, self.m1, self.guess, self.query = m0, m1, guess, query

    def phase1(self, pk, oracle):
        if self.query is not None:
            oracle(self.query)
        return self.m0, self.m1, None

    def phase2(self, c_star, state, oracle):
        return self.guess


@pytest.mark.parametrize(
    "adv",
    [
        BadAdversary(BitString(0, 3), BitString(0, 4)),
        BadAdversary(BitString(0, 0), BitString(0, 0)),
        BadAdversary("abc", BitString(0, 3)),
        BadAdversary(BitString(0, 3), BitString(1, 3), guess=2),
        BadAdversary(BitString(0, 3), BitString(1, 3), query=b"bytes"),
    ],
)
def test_protocol_violations(xor_config, adv):
    with pytest.raises(ExperimentError):
        run_experiment(xor_config, adv, random.Random(0))


def test_advantage_needs_100_trials(xor_config):
    with pytest.raises(ParameterError):
        estimate_advantage(xor_config, CoinFlipAdversary(random.Random(0)), 99, random.Random(0))


def test_null_adversaries(xor_config):
    rng = random.Random(8)
    for adv in (CoinFlipAdversary(random.Random(9)), ConstantAdversary(random.Random(9), 0)):
        est = estimate_advantage(xor_config, adv, 2000, rng)
        assert est.estimate <= 0.05
        assert 0 < est.half_width < 0.03


def test_omniscient_adversary_wins():
    config = SchemeConfig()
    rng = random.Random(10)
    pk, sk = keygen(config, rng)
    est = estimate_advantage(config, OmniscientAdversary(sk, config, rng), 200, rng, keys=(pk, sk))
    assert est.estimate >= 0.45


@pytest.mark.parametrize("variant", ["game1", "game2", "game3"])
def test_scenarios_account_for_every_trial(xor_config, variant):
    stats = scenario_tamper(xor_config, variant, 200, random.Random(11))
    assert stats.rejected + stats.wrong_message + stats.recovered_mb == stats.trials == 200
    assert stats.recovered_mb == 0
    assert len(stats.records) == 200
    assert sum(stats.reasons.values()) == 200


def test_game2_keeps_c1_and_game3_keeps_c2(xor_config, monkeypatch):
    import urdp.game as game

    seen = []
    real = game.decrypt
    monkeypatch.setattr(game, "decrypt", lambda sk, c, cfg: seen.append(c) or real(sk, c, cfg))
    captured = []
    real_enc = game.encrypt_detailed
    monkeypatch.setattr(game, "encrypt_detailed", lambda *a, **kw: captured.append(real_enc(*a, **kw)) or captured[-1])

    scenario_tamper(xor_config, "game2", 30, random.Random(12))
    for (star, rec), c in zip(captured, seen):
        assert c.c1 == star.c1 and c.c2 != star.c2
        # same weight, different selector
        r = InsecureXorBackend(18).dec(game.keygen(xor_config, random.Random(12))[1], c.c2)
        assert r.weight() == rec.selector.h and r != rec.selector.r

    captured.clear(), seen.clear()
    scenario_tamper(xor_config, "game3", 30, random.Random(13))
    for (star, _), c in zip(captured, seen):
        assert c.c2 == star.c2 and c.c1 != star.c1
        assert c.c1.bit_length() <= star.ell


def test_game2_bitflip_mode(xor_config):
    stats = scenario_tamper(xor_config, "game2", 500, random.Random(14), c2_mode="bitflip")
    assert stats.recovered_mb == 0
    assert stats.trials == 500


def test_game1_uses_lwe_backend():
    stats = scenario_tamper(SchemeConfig(), "game1", 50, random.Random(15))
    assert stats.recovered_mb == 0


def test_scenario_arguments(xor_config):
    with pytest.raises(ParameterError):
        scenario_tamper(xor_config, "game1", 0, random.Random(0))
    with pytest.raises(ParameterError):
        scenario_tamper(xor_config, "game4", 10, random.Random(0))
    with pytest.raises(ParameterError):
        scenario_tamper(xor_config, "game2", 10, random.Random(0), c2_mode="other")


def test_report_lines(xor_config):
    stats = scenario_tamper(xor_config, "game3", 5, random.Random(16))
    lines = [json.loads(line) for line in stats.report_lines()]
    assert [r["type"] for r in lines] == ["trial"] * 5 + ["summary"]
    assert all({"variant", "outcome", "reason"} <= set(r) for r in lines[:-1])
    assert lines[-1]["trials"] == 5


def test_scenarios_reproducible(xor_config):
    a = scenario_tamper(xor_config, "game1", 50, random.Random(17))
    b = scenario_tamper(xor_config, "game1", 50, random.Random(17))
    assert a.records == b.records
