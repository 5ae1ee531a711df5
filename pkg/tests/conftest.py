import pytest

from lieweights import catalog
from lieweights.lie import validate

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def algebra(brackets, dim):
    """1-based bracket triples -> LieAlgebra."""
    return validate({(i - 1, j - 1, k - 1): c for i, j, k, c in brackets}, dim)


H3 = [(1, 2, 3, 1)]
L6 = [(1, 2, 3, 1), (1, 4, 5, 1), (2, 5, 6, 1), (3, 4, 6, -1)]
H5 = [(1, 2, 5, 1), (3, 4, 5, 1)]
L58 = [(1, 2, 4, 1), (1, 3, 5, 1)]
# Weights 2,6,1,3,5,7,8 (rank 1): X3 + X5 has the weight of X2 but [X3,X5] = 0.
COND1_BROKEN = [(1, 2, 7, 1), (1, 3, 4, -1), (1, 4, 5, 1), (1, 5, 6, -1),
                (2, 3, 6, -1), (3, 6, 7, -1), (4, 5, 7, 1)]


@pytest.fixture
def h3():
    return algebra(H3, 3)


@pytest.fixture
def l6():
    return algebra(L6, 6)


@pytest.fixture
def h5():
    return algebra(H5, 5)


@pytest.fixture
def abelian3():
    return validate({}, 3)


@pytest.fixture(scope="session")
def catalog_entries():
    return catalog.entries()


@pytest.fixture(scope="session")
def catalog_algebras(catalog_entries):
    return {name: e.document.algebra() for name, e in catalog_entries.items()}
