"""Tests for polytope.py: hull, polarity, isomorphism, pyramids, preservation."""

import random
from fractions import Fraction

import pytest

from src.constructors import cyclic, direct_sum, product, pyramid, simplex
from src.exactnum import GeometryError, affine_rank
from src.polytope import (
    FaceClass,
    PointConfig,
    Preservation,
    apexes,
    comb_iso,
    face_preservation,
    hull,
    polar_dual,
    polygon_cycle,
    preserved_faces,
    project,
    pyramid_decompose,
    to_full_dimensional,
)


def _cube():
    return product(product(simplex(1), simplex(1)), simplex(1))


def _shuffled(P, seed):
    order = list(range(P.n_vertices))
    random.Random(seed).shuffle(order)
    points = tuple(P.points[j] for j in order)
    return hull(PointConfig(P.ambient_dim, points, tuple(P.labels[j] for j in order)))


class TestHull:
    def test_interior_point_dropped(self):
        P = hull(PointConfig.of([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1)]))
        assert P.n_vertices == 4
        assert P.n_facets == 4
        assert "4" not in P.labels

    def test_edge_point_dropped(self):
        P = hull(PointConfig.of([(0, 0), (1, 0), (2, 0), (0, 1)]))
        assert P.n_vertices == 3
        assert P.labels == ("0", "2", "3")

    def test_prism(self, prism):
        P = hull(prism.vertices)
        assert P.n_vertices == 6
        assert P.n_facets == 5
        assert sorted(sum(row) for row in P.incidence) == [3, 3, 4, 4, 4]

    def test_cyclic_4_8(self):
        P = cyclic(4, 8)
        assert (P.n_vertices, P.n_facets) == (8, 20)

    def test_lower_dimensional(self):
        P = hull(PointConfig.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        assert P.dim == 2
        assert P.ambient_dim == 3
        assert P.n_facets == 3

    def test_repeated_points_keep_first_label(self):
        P = hull(PointConfig.of([(0, 0), (1, 0), (0, 1), (1, 0)], ["a", "b", "c", "d"]))
        assert P.labels == ("a", "b", "c")

    @pytest.mark.parametrize("points", [[(1, 2)], [(1, 2), (1, 2)]])
    def test_zero_dimensional(self, points):
        with pytest.raises(GeometryError, match="zero-dimensional"):
            hull(PointConfig.of(points))

    def test_idempotent(self):
        P = cyclic(3, 6)
        Q = hull(P.vertices)
        assert Q.points == P.points
        assert set(Q.facets) == set(P.facets)

    def test_facets_span_hyperplanes(self):
        P = cyclic(4, 8)
        for on in P.facet_vertex_sets:
            assert affine_rank([P.points[j] for j in on]) == P.dim - 1

    def test_irredundant_facets(self, prism):
        """Dropping any inequality admits a point the full system rejects."""
        P = hull(prism.vertices)
        probes = [(Fraction(-1), Fraction(0), Fraction(0)), (Fraction(2), Fraction(0), Fraction(0)),
                  (Fraction(1, 2), Fraction(-1), Fraction(0)), (Fraction(1, 2), Fraction(0), Fraction(-1)),
                  (Fraction(1, 2), Fraction(1), Fraction(1))]
        for i in range(P.n_facets):
            others = [f for j, f in enumerate(P.facets) if j != i]
            assert any(
                all(f.slack(x) >= 0 for f in others) and P.facets[i].slack(x) < 0
                for x in probes
            )


class TestPolarDual:
    def test_counts_swap(self):
        P = product(simplex(1), simplex(3))
        D = polar_dual(P)
        assert (D.n_vertices, D.n_facets) == (P.n_facets, P.n_vertices)
        assert comb_iso(D, direct_sum(simplex(1), simplex(3))) is not None

    def test_incidence_transposes(self, square):
        D = polar_dual(square)
        assert D.incidence == tuple(zip(*square.incidence))

    def test_square_polar_is_diamond(self, square):
        D = polar_dual(square)
        assert set(D.points) == {(-2, 0), (2, 0), (0, -2), (0, 2)}
        assert D.labels == ("f0", "f1", "f2", "f3")

    def test_involution(self):
        cube = _cube()
        assert comb_iso(polar_dual(polar_dual(cube)), cube) is not None

    def test_simplex_self_dual(self):
        assert comb_iso(polar_dual(simplex(4)), simplex(4)) is not None

    def test_lower_dimensional_input(self):
        tri = hull(PointConfig.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        D = polar_dual(tri)
        assert D.ambient_dim == 2
        assert D.n_vertices == 3


class TestCombIso:
    def test_square_vs_quadrilateral(self, square):
        quad = hull(PointConfig.of([(0, 0), (3, 0), (2, 5), (-1, 1)]))
        iso = comb_iso(square, quad)
        assert iso is not None
        assert sorted(iso.vertex_map) == [0, 1, 2, 3]

    def test_square_vs_triangle(self, square, triangle):
        assert comb_iso(square, triangle) is None

    def test_prism_vs_octahedron(self, prism, octahedron):
        assert comb_iso(prism, octahedron) is None

    def test_affine_image_and_relabeling(self, prism):
        moved = [
            (2 * x + y + 1, x + y, x - z + 3) for x, y, z in reversed(prism.points)
        ]
        Q = hull(PointConfig.of(moved, [f"v{i}" for i in range(6)]))
        assert comb_iso(prism, Q) is not None
        assert comb_iso(Q, prism) is not None

    def test_reflexive(self):
        P = cyclic(4, 8)
        iso = comb_iso(P, P)
        assert iso is not None


class TestPyramids:
    def test_square_pyramid(self, square):
        P = pyramid(square)
        dec = pyramid_decompose(P)
        assert dec.k == 1
        assert dec.apex_labels == ("a0",)
        assert dec.base.n_vertices == 4
        assert comb_iso(dec.base, square) is not None

    def test_simplex_convention(self):
        dec = pyramid_decompose(simplex(4))
        assert dec.k == 3
        assert dec.base.n_vertices == 2
        assert dec.base.dim == 1

    def test_prism_is_not_a_pyramid(self, prism):
        dec = pyramid_decompose(prism)
        assert dec.k == 0
        assert dec.base is prism

    def test_twofold(self, prism):
        dec = pyramid_decompose(pyramid(prism, 2))
        assert dec.k == 2
        assert comb_iso(to_full_dimensional(dec.base), prism) is not None

    def test_apexes(self, square):
        P = pyramid(square, 2)
        assert [P.labels[j] for j in apexes(P)] == ["a0", "a1"]

    @pytest.mark.parametrize("seed", range(5))
    def test_peel_order_does_not_change_base(self, prism, seed):
        """Listing the vertices in another order peels the apexes in another order."""
        P = pyramid(prism, 3)
        Q = _shuffled(P, seed)
        a, b = pyramid_decompose(P), pyramid_decompose(Q)
        assert set(a.apex_labels) == set(b.apex_labels)
        assert comb_iso(to_full_dimensional(a.base), to_full_dimensional(b.base)) is not None

    @pytest.mark.parametrize("seed", range(3))
    def test_simplex_base_any_order(self, seed):
        dec = pyramid_decompose(_shuffled(simplex(5), seed))
        assert (dec.k, dec.base.n_vertices, dec.base.dim) == (4, 2, 1)


class TestPolygonCycle:
    def test_square(self, square):
        assert polygon_cycle(square) == (0, 1, 3, 2)

    def test_not_a_polygon(self, prism):
        with pytest.raises(GeometryError):
            polygon_cycle(prism)


class TestProject:
    def test_cube_to_square(self):
        Q = project(_cube(), 2)
        assert Q.n_vertices == 4

    def test_prism_along_axis(self):
        Q = project(product(simplex(2), simplex(1)), 2)
        assert Q.n_vertices == 3

    def test_keep_out_of_range(self, square):
        with pytest.raises(ValueError):
            project(square, 2)

    def test_degenerate_image(self):
        segment = hull(PointConfig.of([(0, 0), (0, 1)]))
        with pytest.raises(GeometryError, match="zero-dimensional"):
            project(segment, 1)


class TestPreservation:
    def test_square_projected_to_x(self, square):
        report = preserved_faces(square)
        assert report.count(FaceClass.VERTICAL) == 2
        assert report.strictly_preserved_vertices() == []
        assert report.facets.count(Preservation.PRESERVED) == 2

    def test_projection_example(self, shadow_hexagon):
        """One vertex strictly preserved, one edge preserved not strictly."""
        report = preserved_faces(shadow_hexagon)
        strict = report.strictly_preserved_vertices()
        assert [shadow_hexagon.points[j] for j in strict] == [(4, 0)]
        assert report.facets.count(Preservation.PRESERVED) == 1
        assert report.facets.count(Preservation.STRICT) == 0

    def test_apex_of_balanced_pyramid(self):
        """An apex with two upper and two lower facets around it is strictly preserved."""
        Q = hull(PointConfig.of([(0, 1, 0), (0, 0, 1), (0, -1, 0), (0, 0, -1), (1, 0, 0)]))
        report = preserved_faces(Q)
        assert report.count(FaceClass.UPPER) == 2
        assert report.count(FaceClass.LOWER) == 2
        (apex,) = apexes(Q)
        assert report.vertices[apex] is Preservation.STRICT

    def test_face_preservation_on_edge(self, shadow_hexagon):
        left = [j for j, p in enumerate(shadow_hexagon.points) if p[0] == 0]
        assert face_preservation(shadow_hexagon, left) is Preservation.PRESERVED

    def test_needs_full_dimension(self):
        tri = hull(PointConfig.of([(1, 0, 0), (0, 1, 0), (0, 0, 1)]))
        with pytest.raises(GeometryError):
            preserved_faces(tri)
