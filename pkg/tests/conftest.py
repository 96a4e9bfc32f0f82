import pytest

from qpack import GenericIncidence, make_field


@pytest.fixture(scope="session")
def f3():
    return make_field(3)


@pytest.fixture(scope="session")
def f4():
    return make_field(4)


@pytest.fixture(scope="session")
def f5():
    return make_field(5)


@pytest.fixture(scope="session")
def f7():
    return make_field(7)


@pytest.fixture(scope="session")
def f9():
    return make_field(9)


def cycle(n: int) -> GenericIncidence:
    """The n-cycle as an incidence structure: n points, n 2-point lines."""
    return GenericIncidence.from_lines(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def c5():
    return cycle(5)


@pytest.fixture
def triangle_toy():
    return GenericIncidence.from_lines(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def path3():
    return GenericIncidence.from_lines(3, [(0, 1), (1, 2)])


@pytest.fixture
def grid33():
    """3x3 rook's grid: rows and columns as lines.  A generalized quadrangle
    of order (2, 1) with exactly (s*t+1)*(s+1) = 9 points."""
    rows = [(3 * i, 3 * i + 1, 3 * i + 2) for i in range(3)]
    cols = [(j, j + 3, j + 6) for j in range(3)]
    return GenericIncidence.from_lines(9, rows + cols)
