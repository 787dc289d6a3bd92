import pytest

from ellpos.poset import GroupClass


def grp(ell, *parts):
    return GroupClass(ell, parts)


@pytest.fixture
def g3():
    return lambda *parts: GroupClass(3, parts)


@pytest.fixture
def g5():
    return lambda *parts: GroupClass(5, parts)
