import pytest

from lambdaforge.contexts import get_model


@pytest.fixture(scope="session")
def torus2():
    return get_model("torus2")


@pytest.fixture(scope="session")
def torus4():
    return get_model("torus4")


@pytest.fixture(scope="session")
def s2():
    return get_model("s2")


@pytest.fixture(scope="session")
def cp2():
    return get_model("cp2")


@pytest.fixture(scope="session")
def cp3():
    return get_model("cp3")


@pytest.fixture(scope="session")
def heis3():
    return get_model("heis3")
