import pytest

from chromatope import builders
from chromatope.coloring import Coloring, opposite_facet_coloring


@pytest.fixture(scope="session")
def cube2():
    return builders.cube(2)


@pytest.fixture(scope="session")
def cube3():
    return builders.cube(3)


@pytest.fixture(scope="session")
def cube4():
    return builders.cube(4)


@pytest.fixture(scope="session")
def simplex3():
    return builders.simplex(3)


@pytest.fixture(scope="session")
def hexagon():
    return builders.polygon(6)


@pytest.fixture(scope="session")
def cube3_coloring(cube3):
    return opposite_facet_coloring(cube3)


@pytest.fixture(scope="session")
def trunc_cube3(cube3):
    return builders.truncate_vertex(cube3, 0)


@pytest.fixture(scope="session")
def trunc_cube3_coloring(trunc_cube3, cube3_coloring):
    return Coloring(tuple(cube3_coloring.assignment) + (4,), 4)


@pytest.fixture(scope="session")
def trunc3_cube3(cube3):
    vs = builders.strongly_separated_vertices(cube3, 3)
    return builders.truncate_vertices(cube3, vs)


@pytest.fixture(scope="session")
def trunc3_cube3_coloring(trunc3_cube3, cube3_coloring):
    return Coloring(tuple(cube3_coloring.assignment) + (4, 4, 4), 4)
