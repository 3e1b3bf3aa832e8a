import pytest

from colog.fixtures import fixture_text, load_fixture


@pytest.fixture(scope="session")
def table6():
    return load_fixture("table6")


@pytest.fixture(scope="session")
def sample1():
    return load_fixture("sample1")


@pytest.fixture(scope="session")
def sample2():
    return load_fixture("sample2")


@pytest.fixture(scope="session")
def verification():
    return load_fixture("verification")


@pytest.fixture(scope="session")
def effectors():
    return load_fixture("effectors")


@pytest.fixture(scope="session")
def sample1_text():
    return fixture_text("sample1")
