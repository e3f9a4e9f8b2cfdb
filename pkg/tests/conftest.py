import numpy as np
import pytest


@pytest.fixture
def rng() -> np.random.Generator:
    # fixed seed so every run sees the same random draws
    return np.random.default_rng(20260814)
