"""Shared fixtures: small reference configurations used across the suite."""
import pytest

from coxcert.fields import Field
from coxcert.points import PointConfig


@pytest.fixture(scope="session")
def f5():
    return Field.prime(5)


@pytest.fixture(scope="session")
def grid_f5(f5):
    """The 3x3 coordinate grid {0, 1, -1}^2 embedded at z = 1."""
    pts = [(x, y, 1) for x in (0, 1, 4) for y in (0, 1, 4)]
    return PointConfig.build(f5, pts)


@pytest.fixture(scope="session")
def cube_f5(f5):
    """Vertices of the unit cube {0,1}^3 embedded at w = 1."""
    pts = [(x, y, z, 1) for z in (0, 1) for y in (0, 1) for x in (0, 1)]
    return PointConfig.build(f5, pts)
