import pytest

from quatlift import fixture as fx


@pytest.fixture(scope="session")
def algebra():
    return fx.fixture_algebra()


@pytest.fixture(scope="session")
def class_set_17():
    return fx.fixture_class_set()


@pytest.fixture(scope="session")
def space0():
    return fx.fixture_space(0)


@pytest.fixture(scope="session")
def space1():
    return fx.fixture_space(1)


@pytest.fixture(scope="session")
def golden_130():
    return fx.golden_lift(130)
