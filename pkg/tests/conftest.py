"""Shared fixtures: the desk instances used across every module's tests."""

from functools import lru_cache

import numpy as np
import pytest

from rieszgibbs import models


@lru_cache(maxsize=None)
def instance(name: str, n: int | None = None, beta: float | None = None, seed: int = 11):
    """Cached model instance; systems are immutable so sharing is safe."""
    return models.instantiate(models.preset(name, n=n, beta=beta, seed=seed))


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def jordan2():
    return instance("jordan2")
