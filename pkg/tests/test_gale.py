"""Tests for gale.py: transforms, face recovery, contracted diagrams, sporadic search."""

from collections import Counter
from fractions import Fraction

import pytest

from src.constructors import cyclic, product, pyramid, simplex
from src.exactnum import GeometryError, centroid, proportional
from src.gale import (
    ContractedDiagram,
    GaleDiagram,
    canonical,
    contracted_diagrams,
    contracted_facet_count,
    enumerate_d_plus_3,
    faces_from_gale,
    gale_transform,
    is_coface,
    is_polytopal,
    is_polytopal_contracted,
    positive_dependence,
    realize_diagram,
)
from src.polytope import PointConfig, apexes, incidence_isomorphism, pyramid_decompose


def _facet_sets(incidence):
    return {frozenset(j for j, on in enumerate(row) if on) for row in incidence}


def _diagram(*values):
    return GaleDiagram(1, tuple((Fraction(v),) for v in values), tuple(str(i) for i in range(len(values))))


@pytest.fixture
def cross_square():
    return PointConfig.of([(1, 0), (-1, 0), (0, 1), (0, -1)])


class TestGaleTransform:
    def test_square(self, cross_square):
        G = gale_transform(cross_square)
        assert G.corank == 1
        assert proportional([v[0] for v in G.vectors], (1, 1, -1, -1))

    def test_prism_corank(self, prism):
        G = gale_transform(prism.vertices)
        assert G.corank == 2
        assert len(G) == 6

    def test_simplex_with_barycenter(self):
        P = simplex(3)
        pts = PointConfig.of(list(P.points) + [centroid(P.points)])
        G = gale_transform(pts)
        assert G.corank == 1
        *rest, bary = [v[0] for v in G.vectors]
        assert all(x * bary < 0 for x in rest)

    def test_orthogonality(self, prism):
        G = gale_transform(prism.vertices)
        for k in range(G.corank):
            for coord in range(prism.ambient_dim):
                assert sum(v[k] * p[coord] for v, p in zip(G.vectors, prism.points)) == 0
            assert sum(v[k] for v in G.vectors) == 0

    def test_no_dependencies(self):
        with pytest.raises(GeometryError, match="no dependencies"):
            gale_transform(simplex(3).vertices)


class TestFaces:
    def test_square(self, cross_square):
        rows = faces_from_gale(gale_transform(cross_square))
        assert len(rows) == 4
        assert all(sum(row) == 2 for row in rows)

    def test_prism(self, prism):
        rows = faces_from_gale(gale_transform(prism.vertices))
        assert sorted(sum(row) for row in rows) == [3, 3, 4, 4, 4]
        assert _facet_sets(rows) == set(prism.facet_vertex_sets)

    def test_cyclic_3_6(self):
        P = cyclic(3, 6)
        rows = faces_from_gale(gale_transform(P.vertices))
        assert len(rows) == 8
        assert all(sum(row) == 3 for row in rows)
        assert _facet_sets(rows) == set(P.facet_vertex_sets)

    @pytest.mark.parametrize(
        "build, recombine",
        [
            (lambda: product(simplex(1), simplex(2)), [[2, 1], [1, 1]]),
            (lambda: product(simplex(1), simplex(2)), [[-1, 0], [0, -1]]),
            (lambda: cyclic(3, 7), [[1, 2, 0], [0, 1, -1], [3, 0, 1]]),
            (lambda: cyclic(4, 8), [[0, 1, 0], [1, 0, 0], [1, 1, -2]]),
        ],
        ids=["prism", "prism-negated", "cyclic-3-7", "cyclic-4-8"],
    )
    def test_kernel_basis_does_not_matter(self, build, recombine):
        """Any invertible recombination of the kernel basis reads off the same facets."""
        P = build()
        G = gale_transform(P.vertices)
        r = G.corank
        other = GaleDiagram(
            r,
            tuple(tuple(sum(v[k] * recombine[k][l] for k in range(r)) for l in range(r))
                  for v in G.vectors),
            G.labels,
        )
        assert faces_from_gale(other) == faces_from_gale(G)
        assert _facet_sets(faces_from_gale(other)) == set(P.facet_vertex_sets)

    def test_not_polytopal(self):
        with pytest.raises(GeometryError, match="not polytopal"):
            faces_from_gale(_diagram(1, 1, 1, -1))

    def test_coface(self, cross_square):
        G = gale_transform(cross_square)
        assert is_coface(G, [0, 2])
        assert not is_coface(G, [0, 1])
        assert is_coface(G, [])


class TestPolytopality:
    def test_balanced(self):
        assert is_polytopal(_diagram(1, 1, -1, -1))

    def test_lonely_negative(self):
        assert not is_polytopal(_diagram(1, 1, 1, -1))

    def test_zero_vector_is_apex(self, square):
        P = pyramid(square)
        G = gale_transform(P.vertices)
        assert is_polytopal(G)
        zeros = [j for j, v in enumerate(G.vectors) if not any(v)]
        assert zeros == apexes(P)

    def test_positive_dependence(self, cross_square):
        G = gale_transform(cross_square)
        lam = positive_dependence(G)
        assert lam is not None
        assert all(x > 0 for x in lam)
        assert sum(c * v[0] for c, v in zip(lam, G.vectors)) == 0

    def test_no_positive_dependence(self):
        assert positive_dependence(_diagram(1, 1, 1, 1)) is None

    def test_lonely_negative_still_balances(self):
        """A dependence can be strictly positive on a diagram that is not polytopal."""
        assert positive_dependence(_diagram(1, 1, 1, -1)) == (1, 1, 1, 3)


class TestContractedDiagrams:
    def test_pentagon(self):
        C = ContractedDiagram((1, 0, 1, 0, 1, 0, 1, 0, 1, 0))
        assert is_polytopal_contracted(C)
        assert contracted_facet_count(C) == 5
        P = realize_diagram(C)
        assert (P.dim, P.n_vertices, P.n_facets) == (2, 5, 5)

    def test_directions_antipodal(self):
        C = ContractedDiagram((1, 1, 1, 1, 1, 1))
        dirs = C.directions()
        k = C.lines
        assert all(dirs[j + k] == (-dirs[j][0], -dirs[j][1]) for j in range(k))

    def test_canonical(self):
        assert canonical((0, 1, 2, 3)) == (0, 1, 2, 3)
        assert canonical((3, 2, 1, 0)) == (0, 1, 2, 3)
        assert canonical((2, 3, 0, 1)) == (0, 1, 2, 3)

    def test_odd_positions_rejected(self):
        with pytest.raises(ValueError):
            ContractedDiagram((1, 1, 1))

    def test_facet_formula_matches_circuits(self):
        for C in contracted_diagrams(6):
            assert contracted_facet_count(C) == len(faces_from_gale(C.gale()))

    def test_realization_matches_incidence(self):
        for C in contracted_diagrams(6, pyramids=False):
            P = realize_diagram(C)
            assert P.n_vertices == 6
            assert P.dim == 3
            assert incidence_isomorphism(P.incidence, faces_from_gale(C.gale())) is not None


class TestEnumeration:
    def test_pentagon_only(self):
        (t,) = enumerate_d_plus_3(2)
        assert t.facet_count == 5

    def test_six_vertex_3_polytopes(self):
        assert len(enumerate_d_plus_3(3)) == 7

    def test_facet_bounds(self):
        for d in (3, 4):
            for t in enumerate_d_plus_3(d):
                assert len(t.incidence[0]) == d + 3
                assert d + 1 <= t.facet_count

    def test_facet_filter(self):
        types = enumerate_d_plus_3(4, facet_count=8)
        assert types
        assert all(t.facet_count == 8 for t in types)

    @pytest.mark.parametrize("d", [1, 9])
    def test_guard(self, d):
        with pytest.raises(GeometryError):
            enumerate_d_plus_3(d)


class TestSporadic:
    def test_count_and_dimensions(self, sporadics):
        assert len(sporadics) == 8
        assert sorted(d for d, _ in sporadics) == [3, 3, 4, 4, 4, 5, 5, 6]

    def test_none_in_dimension_7(self, sporadics):
        assert Counter(d for d, _ in sporadics)[7] == 0

    def test_shape(self, sporadics):
        for d, P in sporadics:
            assert P.dim == d
            assert P.n_vertices == d + 4
            assert P.n_facets == d + 3
            assert pyramid_decompose(P).k == 0
