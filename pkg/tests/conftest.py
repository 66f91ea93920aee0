"""Shared fixtures for fewxc tests."""

from fractions import Fraction

import pytest

from src.constructors import desarguian_hexagon, direct_sum, product, simplex
from src.corpus import GENERIC_HEXAGON, SHADOW_HEXAGON, polygon, regular_hexagon
from src.gale import sporadic_d4_vertices


@pytest.fixture
def triangle():
    return simplex(2)


@pytest.fixture
def square():
    """Δ1 × Δ1 with labels (i,j)."""
    return product(simplex(1), simplex(1))


@pytest.fixture
def prism():
    """Δ1 × Δ2, the triangular prism."""
    return product(simplex(1), simplex(2))


@pytest.fixture
def octahedron():
    return direct_sum(direct_sum(simplex(1), simplex(1)), simplex(1))


@pytest.fixture
def hexagon():
    """Regular-shaped hexagon; opposite edges parallel, so Desarguian at infinity."""
    return regular_hexagon()


@pytest.fixture
def shadow_hexagon():
    """Hexagon with one vertical edge, projected onto the x-axis in the preservation tests."""
    return polygon(SHADOW_HEXAGON)


@pytest.fixture
def finite_hexagon():
    """Desarguian hexagon whose three lines meet at the origin."""
    return desarguian_hexagon(
        (0, 0, 1), ((1, 0), (1, 1), (0, 1)), (3, 1, Fraction(1, 3), 3, 1, 3)
    )


@pytest.fixture
def generic_hexagon():
    """No labeling makes the three lines concurrent."""
    return polygon(GENERIC_HEXAGON)


@pytest.fixture(scope="session")
def sporadics():
    """(dimension, polytope) for every non-pyramidal d+4-vertex polytope with d+3 facets."""
    return sporadic_d4_vertices(7)
