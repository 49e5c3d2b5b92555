import random
from fractions import Fraction

import pytest


@pytest.fixture
def rng():
    return random.Random(20220825)


def random_rat(r: random.Random, height: int = 20) -> Fraction:
    return Fraction(r.randint(-height, height), r.randint(1, 9))


def distinct_points(r: random.Random, count: int, allow_zero: bool = False) -> list[Fraction]:
    pts: list[Fraction] = []
    while len(pts) < count:
        x = random_rat(r, 40)
        if x not in pts and (allow_zero or x != 0):
            pts.append(x)
    return pts
