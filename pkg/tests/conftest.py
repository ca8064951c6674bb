import numpy as np
import pytest

import twinzeta as tz


@pytest.fixture(scope="session")
def sieve():
    """main session sieve: covers golomb verification up to a=1e5 (members
    about 2e5, wide factorization to 4e12) and coefficient arrays to 2e6"""
    return tz.build_sieve(2_000_016)


@pytest.fixture(scope="session")
def zeros_small():
    return tz.bundled_zeros("small")


@pytest.fixture(scope="session")
def zeros_large():
    return tz.bundled_zeros("large")


@pytest.fixture(scope="session")
def cfg1(sieve):
    return tz.twin_config(sieve, 1)


@pytest.fixture(scope="session")
def cfg2(sieve):
    return tz.twin_config(sieve, 2)


@pytest.fixture(scope="session")
def cfg3(sieve):
    return tz.twin_config(sieve, 3)
