import numpy as np
import pytest

from ftl.domain import bundled_domain


@pytest.fixture(scope="session")
def egg1():
    return bundled_domain("egg1")


@pytest.fixture(scope="session")
def egg2():
    return bundled_domain("egg2")


@pytest.fixture(scope="session")
def twoterm():
    return bundled_domain("twoterm")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
