import time

import pytest

from gridext import GridShape, build_graph, enumerate_index_orders

EXTREME_MN = ((2, 2), (3, 2), (2, 3), (4, 2))


@pytest.fixture(scope="session")
def diamond():
    return GridShape.equilateral(2, 2)


@pytest.fixture(scope="session")
def square3():
    return GridShape.equilateral(3, 2)


@pytest.fixture(scope="session")
def square4():
    return GridShape.equilateral(4, 2)


@pytest.fixture(scope="session")
def cube2():
    return GridShape.equilateral(2, 3)


@pytest.fixture(scope="session")
def square3_orders(square3):
    return tuple(enumerate_index_orders(square3))


@pytest.fixture(scope="session")
def extreme_graphs():
    """Swap graphs for the four exhaustively-checked shapes, plus build time."""
    t0 = time.perf_counter()
    graphs = {mn: build_graph(GridShape.equilateral(*mn)) for mn in EXTREME_MN}
    return graphs, time.perf_counter() - t0
