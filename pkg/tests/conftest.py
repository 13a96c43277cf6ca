import random

import pytest

from urdp.padding import SelectorVector


class ScriptedBits:
    """Pad source that replays fixed values, one per ``getrandbits`` call."""

    def __init__(self, values):
        self.values = list(values)
        self.requests = []

    def getrandbits(self, k):
        self.requests.append(k)
        value = self.values.pop(0)
        assert value.bit_length() <= k, (value, k)
        return value


def reference_encode(m_bits, r_bits, s, rbs_bits, robs):
    """List-of-bits transliteration of the random encoding, used as an oracle."""
    h = sum(r_bits)
    n = len(m_bits)
    v = -(-n // h)
    padded = list(m_bits) + list(rbs_bits)
    assert len(padded) == h * v
    blocks = [padded[i * v : (i + 1) * v] for i in range(h)]
    out, robs = [], list(robs)
    for i, ri in enumerate(r_bits):
        if ri:
            out.append(blocks[sum(r_bits[: i + 1]) - 1])
        else:
            out.append(list(robs.pop(0)))
            assert len(out[-1]) == s
    return out


def reference_extract(encoded_bits, r_bits, n, v, s):
    rest = list(encoded_bits)
    blocks = []
    for ri in r_bits:
        if ri:
            blocks.append(rest[:v])
            rest = rest[v:]
        else:
            rest = rest[s:]
    assert not rest
    return [b for block in blocks for b in block][:n]


@pytest.fixture
def rng():
    return random.Random(20241019)


@pytest.fixture
def scripted():
    return ScriptedBits


GOLDEN_R = "010110101110111010"


@pytest.fixture
def golden_selector():
    return SelectorVector.from_str(GOLDEN_R)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
