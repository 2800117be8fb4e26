import random

import pytest

from maxseg import build_sequence


def uniform_seq(rng: random.Random, n: int, lo: int = 0, hi: int = 9):
    return build_sequence([(rng.randint(lo, hi), 1) for _ in range(n)])


def general_seq(rng: random.Random, n: int, wlo: int = 1, whi: int = 5):
    return build_sequence([(rng.randint(-9, 9), rng.randint(wlo, whi)) for _ in range(n)])


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)
