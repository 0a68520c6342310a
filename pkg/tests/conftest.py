import random

import pytest

from realbott import BottMatrix, matrix_from_index
from realbott.enumeration import index_space


def random_bott(rng: random.Random, n: int) -> BottMatrix:
    return matrix_from_index(n, rng.randrange(index_space(n)))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)
