import functools

import pytest
from hypothesis import settings

from medialq.quandle import enumerate_quandles

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@functools.lru_cache(maxsize=None)
def quandles_upto(n, filt="all"):
    return tuple(q for k in range(1, n + 1) for q in enumerate_quandles(k, filt))


@pytest.fixture(scope="session")
def all4():
    return quandles_upto(4)


@pytest.fixture(scope="session")
def medial4():
    return quandles_upto(4, "medial")


@pytest.fixture(scope="session")
def medial5():
    return quandles_upto(5, "medial")
