import random

import pytest
from hypothesis import HealthCheck, settings

from mdsdual.families import canonical_field

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def gf9():
    return canonical_field(9)


@pytest.fixture(scope="session")
def gf25():
    return canonical_field(25)


@pytest.fixture
def rng():
    return random.Random(20240601)


def random_subset(rng, F, size):
    return rng.sample(range(F.q), size)
