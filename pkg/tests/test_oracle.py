"""Tests for oracle.py: slack matrices, rectangle covers, extension checks."""

import pytest

from src.classifier import desarguian_test, lift_hexagon
from src.constructors import cyclic, product, simplex
from src.exactnum import RMatrix, rank
from src.oracle import (
    CoverLimitError,
    ExtensionCertificate,
    fractional_cover_bound,
    identity_certificate,
    rectangle_cover_bound,
    slack_matrix,
    verify_extension,
    xc_interval,
)
from src.polytope import polar_dual


def _zero_pattern(S: RMatrix) -> tuple[tuple[bool, ...], ...]:
    return tuple(tuple(x == 0 for x in row) for row in S.tolist())


class TestSlackMatrix:
    def test_triangle(self, triangle):
        S = slack_matrix(triangle)
        assert S.shape == (3, 3)
        assert all(sum(x > 0 for x in row) == 1 for row in S.tolist())

    def test_square_rows(self, square):
        S = slack_matrix(square)
        assert S.shape == (4, 4)
        assert all(sum(x == 0 for x in row) == 2 for row in S.tolist())

    def test_nonnegative_and_zero_on_incidence(self, prism):
        S = slack_matrix(prism)
        assert all(x >= 0 for row in S.tolist() for x in row)
        assert _zero_pattern(S) == prism.incidence

    def test_rank_is_dim_plus_one(self):
        assert rank(slack_matrix(cyclic(4, 8))) == 5

    def test_polar_transposes_pattern(self, prism):
        S, T = slack_matrix(prism), slack_matrix(polar_dual(prism))
        assert _zero_pattern(T) == _zero_pattern(S.transpose())
        assert rank(T) == rank(S)


class TestRectangleCover:
    def test_triangle(self, triangle):
        assert rectangle_cover_bound(slack_matrix(triangle)) == 3

    def test_square(self, square):
        assert rectangle_cover_bound(slack_matrix(square)) == 4

    def test_simplex_4(self):
        assert rectangle_cover_bound(slack_matrix(simplex(4))) == 5

    def test_prism(self, prism):
        assert rectangle_cover_bound(slack_matrix(prism)) == 5

    def test_all_positive(self):
        assert rectangle_cover_bound(RMatrix([[1, 2], [3, 4]])) == 1

    def test_empty_support(self):
        assert rectangle_cover_bound(RMatrix([[0, 0], [0, 0]])) == 0

    def test_guard(self):
        with pytest.raises(CoverLimitError, match="support too large for exact cover"):
            rectangle_cover_bound(RMatrix([[1] * 15] * 15))

    def test_node_budget(self, monkeypatch):
        monkeypatch.setattr("src.config.COVER_NODES", 0)
        with pytest.raises(CoverLimitError):
            rectangle_cover_bound(slack_matrix(cyclic(2, 7)))


class TestFractionalCover:
    def test_permutation_support(self, triangle):
        assert fractional_cover_bound(slack_matrix(triangle)) == 3

    def test_square(self, square):
        """Every maximal rectangle of the square covers two of the eight cells."""
        assert fractional_cover_bound(slack_matrix(square)) == 4

    def test_empty_support(self):
        assert fractional_cover_bound(RMatrix([[0, 0], [0, 0]])) == 0

    @pytest.mark.parametrize("name", ["prism", "octahedron", "hexagon", "generic_hexagon"])
    def test_below_exact_cover(self, name, request):
        S = slack_matrix(request.getfixturevalue(name))
        assert 1 <= fractional_cover_bound(S) <= rectangle_cover_bound(S)

    def test_guard(self):
        with pytest.raises(CoverLimitError):
            fractional_cover_bound(RMatrix([[1] * 15] * 15))


class TestVerifyExtension:
    def test_identity(self, square):
        assert verify_extension(square, identity_certificate(square)) == (True, 4)

    def test_hexagon_lift(self, hexagon):
        lift = lift_hexagon(hexagon, desarguian_test(hexagon))
        ok, facets = verify_extension(hexagon, ExtensionCertificate(lift.Q, 2))
        assert ok
        assert facets == 5

    def test_wrong_shadow(self, hexagon):
        prism = product(simplex(1), simplex(2))
        ok, facets = verify_extension(hexagon, ExtensionCertificate(prism, 2))
        assert not ok
        assert facets == 5

    def test_keep_mismatch(self, hexagon, prism):
        assert not verify_extension(hexagon, ExtensionCertificate(prism, 3)).ok

    def test_identity_always_ok(self, prism, octahedron):
        for P in (prism, octahedron, cyclic(3, 7)):
            assert verify_extension(P, identity_certificate(P)) == (True, P.n_facets)


class TestInterval:
    def test_triangle(self, triangle):
        assert xc_interval(triangle) == (3, 3)

    def test_prism(self, prism):
        assert xc_interval(prism) == (5, 5)

    def test_octagon(self):
        lo, hi = xc_interval(cyclic(2, 8))
        assert hi == 8
        assert 3 <= lo <= 8

    def test_guard_falls_back_to_dimension(self, monkeypatch):
        monkeypatch.setattr("src.config.COVER_GUARD", 1)
        assert xc_interval(cyclic(2, 8)) == (3, 8)
