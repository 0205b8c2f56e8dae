import random

import pytest

from monoid_witt.perfect import finite_field, perfect_closure


@pytest.fixture
def F2():
    return finite_field(2)


@pytest.fixture
def F3():
    return finite_field(3)


@pytest.fixture
def F4():
    return finite_field(4)


@pytest.fixture
def F8():
    return finite_field(8)


@pytest.fixture
def F9():
    return finite_field(9)


@pytest.fixture
def P2():
    return perfect_closure(2, "t")


@pytest.fixture
def rng():
    return random.Random(20161019)
