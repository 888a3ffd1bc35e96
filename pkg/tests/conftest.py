import pytest

from shiftsocle.specfile import load_bundled


@pytest.fixture(scope="session")
def golden():
    return load_bundled("golden")


@pytest.fixture(scope="session")
def f001020():
    return load_bundled("f-001020")


@pytest.fixture(scope="session")
def example3x():
    return load_bundled("example3x")


@pytest.fixture(scope="session")
def example54():
    return load_bundled("example54")


@pytest.fixture(scope="session")
def example55():
    return load_bundled("example55")
