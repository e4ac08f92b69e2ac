import pytest

from linsys import c34_explicit, c_explicit, projective_plane


@pytest.fixture(scope="session")
def pi2():
    return projective_plane(2).system


@pytest.fixture(scope="session")
def pi3():
    return projective_plane(3).system


@pytest.fixture(scope="session")
def pi5():
    return projective_plane(5).system


@pytest.fixture(scope="session")
def c34():
    return c34_explicit().system


@pytest.fixture(scope="session")
def c_sys():
    return c_explicit().system
