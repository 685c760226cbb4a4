import pytest

from qtet.exactmath import QParam
from qtet.gen import example_module
from qtet.pairs import extract_qinverting, extract_qtridiagonal

DIAMETERS = (0, 1, 2, 3)


@pytest.fixture(scope="session")
def q2():
    return QParam.rational("2")


@pytest.fixture(scope="session")
def modules(q2):
    return {d: example_module(d, q2) for d in DIAMETERS}


@pytest.fixture(scope="session")
def inverting_pairs(modules):
    return {d: extract_qinverting(M) for d, M in modules.items()}


@pytest.fixture(scope="session")
def tridiagonal_pairs(modules):
    return {d: extract_qtridiagonal(M) for d, M in modules.items()}
