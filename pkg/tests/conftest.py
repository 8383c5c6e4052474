import pytest

from cdcmip import IndexSetFamily
from cdcmip.geom import PlanarPartition


@pytest.fixture
def sos2_5():
    return IndexSetFamily([[1, 2], [2, 3], [3, 4], [4, 5]])


@pytest.fixture
def triangle():
    return IndexSetFamily([[1, 2], [2, 3], [1, 3]])


@pytest.fixture
def path3():
    return IndexSetFamily([[1, 2, 3], [3, 4, 5], [5, 6, 7]])


def triangle_strip(d: int) -> PlanarPartition:
    """d triangles glued along a zigzag; every adjacent pair shares an edge."""
    polys = []
    for i in range(d):
        if i % 2 == 0:
            polys.append([(i, 0), (i + 2, 0), (i + 1, 1)])
        else:
            polys.append([(i, 1), (i + 1, 0), (i + 2, 1)])
    return PlanarPartition(polys)


def ring8() -> PlanarPartition:
    """Eight convex cells around a triangular hole.

    The hole's corners are shared pairwise by three cells but never jointly,
    so the pooled constraint has a three-element minimal infeasible set.
    """
    return PlanarPartition(
        [
            [(0, 0), (4, 0), (6, 2), (2, 2)],
            [(2, 2), (4, 4), (0, 4)],
            [(0, 4), (4, 4), (4, 6)],
            [(6, 2), (8, 4), (4, 4)],
            [(0, 0), (2, 2), (0, 4)],
            [(8, 0), (8, 4), (6, 2)],
            [(4, 4), (8, 4), (4, 6)],
            [(4, 0), (8, 0), (6, 2)],
        ]
    )
