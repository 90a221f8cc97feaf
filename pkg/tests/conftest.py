import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperlab import FiniteMetricSpace


@pytest.fixture
def line_space():
    """X = {0, 1, 2, 5} on the real line."""
    return FiniteMetricSpace.from_points([0.0, 1.0, 2.0, 5.0])


def random_space(n, seed):
    from hyperlab.families import uniform_random

    return uniform_random(n, seed=seed).space


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(key=20260810))
