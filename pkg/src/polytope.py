"""Dual-description polytopes built from exact vertex sets.

A Polytope carries its irredundant vertices, its facet inequalities a·x <= b and
the facet-by-vertex incidence matrix. Lower-dimensional point sets are handled
in their affine hull: facet normals are taken inside the hull's direction space,
and ``to_full_dimensional`` charts them onto dim(P) coordinates.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .exactnum import (
    GeometryError,
    RMatrix,
    Vec,
    centroid,
    dot,
    inverse,
    null_space,
    primitive,
    rank,
    row_basis,
    sub,
    vec,
)

log = logging.getLogger("fewxc")

Incidence = tuple[tuple[bool, ...], ...]


# ---------------------------------------------------------------------------
# Core types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PointConfig:
    """Ordered labeled points of a common length."""

    ambient_dim: int
    points: tuple[Vec, ...]
    labels: tuple[str, ...]

    def __post_init__(self):
        if len(self.points) != len(self.labels):
            raise ValueError("one label per point required")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("point labels must be unique")
        for p in self.points:
            if len(p) != self.ambient_dim:
                raise ValueError(f"point {p} does not have length {self.ambient_dim}")

    @classmethod
    def of(cls, points: Iterable[Iterable], labels: Iterable[str] | None = None) -> PointConfig:
        pts = tuple(vec(p) for p in points)
        names = tuple(labels) if labels is not None else tuple(str(i) for i in range(len(pts)))
        return cls(len(pts[0]) if pts else 0, pts, names)

    def __len__(self) -> int:
        return len(self.points)

    def index(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class Facet:
    """The inequality normal·x <= offset."""

    normal: Vec
    offset: Fraction

    @classmethod
    def make(cls, normal: Sequence[Fraction], offset: Fraction) -> Facet:
        """Positive rescaling to coprime integers."""
        scaled = primitive(tuple(normal) + (Fraction(offset),))
        return cls(scaled[:-1], scaled[-1])

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        return self.offset - dot(self.normal, x)


@dataclass(frozen=True)
class Polytope:
    dim: int
    vertices: PointConfig
    facets: tuple[Facet, ...]
    incidence: Incidence

    @classmethod
    def from_description(
        cls, config: PointConfig, facets: Iterable[Facet], dim: int | None = None
    ) -> Polytope:
        """Build from known vertices and facet inequalities; incidence is recomputed."""
        normalized = tuple(Facet.make(f.normal, f.offset) for f in facets)
        incidence = tuple(
            tuple(f.slack(p) == 0 for p in config.points) for f in normalized
        )
        if dim is None:
            dim = _affine_dim(config.points)
        return cls(dim, config, normalized, incidence)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def ambient_dim(self) -> int:
        return self.vertices.ambient_dim

    @property
    def points(self) -> tuple[Vec, ...]:
        return self.vertices.points

    @property
    def labels(self) -> tuple[str, ...]:
        return self.vertices.labels

    @cached_property
    def facet_vertex_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(j for j, on in enumerate(row) if on) for row in self.incidence)

    @cached_property
    def vertex_facet_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(
            frozenset(i for i, row in enumerate(self.incidence) if row[j])
            for j in range(self.n_vertices)
        )

    def contains(self, x: Sequence[Fraction]) -> bool:
        """Membership for points already in the affine hull."""
        return all(f.slack(x) >= 0 for f in self.facets)

    def __repr__(self) -> str:
        return f"Polytope(dim={self.dim}, vertices={self.n_vertices}, facets={self.n_facets})"


class FaceClass(StrEnum):
    UPPER = "upper"
    LOWER = "lower"
    VERTICAL = "vertical"


class Preservation(StrEnum):
    STRICT = "strictly preserved"
    PRESERVED = "preserved not strictly"
    NOT_PRESERVED = "not preserved"


class Isomorphism(NamedTuple):
    vertex_map: tuple[int, ...]
    facet_map: tuple[int, ...]


@dataclass(frozen=True)
class PyramidDecomposition:
    base: Polytope
    apex_labels: tuple[str, ...]

    @property
    def k(self) -> int:
        return len(self.apex_labels)


@dataclass(frozen=True)
class PreservationReport:
    facet_classes: tuple[FaceClass, ...]
    vertices: tuple[Preservation, ...]
    facets: tuple[Preservation, ...]

    def strictly_preserved_vertices(self) -> list[int]:
        return [j for j, p in enumerate(self.vertices) if p is Preservation.STRICT]

    def count(self, klass: FaceClass) -> int:
        return sum(1 for c in self.facet_classes if c is klass)


# ---------------------------------------------------------------------------
# Hull
# ---------------------------------------------------------------------------


def _affine_dim(points: Sequence[Vec]) -> int:
    if len(points) < 2:
        return 0
    return rank(RMatrix([sub(p, points[0]) for p in points[1:]], cols=len(points[0])))


def hull(pts: PointConfig) -> Polytope:
    """Convex hull by exhaustive hyperplane search over affinely independent subsets.

    Points repeated in the input keep their first label. Non-vertices are
    dropped. Facet order follows the lexicographic order of the first subset
    that spans each facet.
    """
    points: list[Vec] = []
    labels: list[str] = []
    seen: set[Vec] = set()
    for p, label in zip(pts.points, pts.labels):
        if p not in seen:
            seen.add(p)
            points.append(p)
            labels.append(label)
    if len(points) < 2:
        raise GeometryError("zero-dimensional")

    n, ambient = len(points), pts.ambient_dim
    anchor = points[0]
    diffs = RMatrix([sub(p, anchor) for p in points[1:]], cols=ambient)
    dim = rank(diffs)
    if dim == 0:
        raise GeometryError("zero-dimensional")
    perp = null_space(diffs)

    found: dict[frozenset[int], Facet] = {}
    for subset in combinations(range(n), dim):
        members = set(subset)
        if any(members <= on for on in found):
            continue
        base = points[subset[0]]
        rows = [sub(points[i], base) for i in subset[1:]] + list(perp)
        normals = null_space(RMatrix(rows, cols=ambient))
        if len(normals) != 1:
            continue
        a = normals[0]
        b = dot(a, base)
        values = [dot(a, p) - b for p in points]
        if all(v >= 0 for v in values):
            a, b = tuple(-x for x in a), -b
            values = [-v for v in values]
        elif not all(v <= 0 for v in values):
            continue
        on = frozenset(i for i, v in enumerate(values) if v == 0)
        found[on] = Facet.make(a, b)

    facet_sets = list(found)
    keep = []
    everything = frozenset(range(n))
    for i in range(n):
        containing = [s for s in facet_sets if i in s]
        common = frozenset.intersection(*containing) if containing else everything
        if common == {i}:
            keep.append(i)

    config = PointConfig(ambient, tuple(points[i] for i in keep), tuple(labels[i] for i in keep))
    incidence = tuple(tuple(i in s for i in keep) for s in facet_sets)
    log.debug("hull: %d points in R^%d -> dim %d, %d vertices, %d facets",
              n, ambient, dim, len(keep), len(facet_sets))
    return Polytope(dim, config, tuple(found[s] for s in facet_sets), incidence)


# ---------------------------------------------------------------------------
# Affine charts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AffineChart:
    """Coordinate projection x -> x[coords], an affine isomorphism on the hull.

    Points of the hull are recovered as origin + (y - origin[coords]) @ lift.
    """

    origin: Vec
    coords: tuple[int, ...]
    lift: RMatrix

    @classmethod
    def of(cls, points: Sequence[Vec]) -> AffineChart:
        origin = points[0]
        diffs = RMatrix([sub(p, origin) for p in points[1:]], cols=len(origin))
        basis, pivots = row_basis(diffs)
        square = RMatrix([[basis[r, c] for c in pivots] for r in range(basis.rows)],
                         cols=len(pivots))
        return cls(origin, pivots, inverse(square) @ basis)

    def coordinates(self, x: Sequence[Fraction]) -> Vec:
        return tuple(x[c] for c in self.coords)

    def point(self, y: Sequence[Fraction]) -> Vec:
        shift = [y[k] - self.origin[c] for k, c in enumerate(self.coords)]
        return tuple(
            self.origin[j] + sum((shift[k] * self.lift[k, j] for k in range(len(shift))), Fraction(0))
            for j in range(len(self.origin))
        )

    def pull(self, facet: Facet) -> Facet:
        """Rewrite a·x <= b in chart coordinates."""
        m_a = self.lift.apply(facet.normal)
        offset = facet.offset - dot(facet.normal, self.origin) + dot(self.coordinates(self.origin), m_a)
        return Facet.make(m_a, offset)


def to_full_dimensional(P: Polytope) -> Polytope:
    """An affinely isomorphic copy of P in R^dim(P), labels and facet order kept."""
    if P.dim == P.ambient_dim:
        return P
    chart = AffineChart.of(P.points)
    config = PointConfig(P.dim, tuple(chart.coordinates(p) for p in P.points), P.labels)
    return Polytope.from_description(config, (chart.pull(f) for f in P.facets), dim=P.dim)


# ---------------------------------------------------------------------------
# Polarity, isomorphism, pyramids
# ---------------------------------------------------------------------------


def polar_dual(P: Polytope) -> Polytope:
    """Polar about the vertex centroid.

    Vertex i of the result is dual to facet i of P and facet j of the result
    is dual to vertex j of P, so the incidence matrix transposes.
    """
    P = to_full_dimensional(P)
    c = centroid(P.points)
    points = []
    for f in P.facets:
        height = f.offset - dot(f.normal, c)
        points.append(tuple(a / height for a in f.normal))
    config = PointConfig(P.dim, tuple(points), tuple(f"f{i}" for i in range(P.n_facets)))
    facets = [Facet.make(sub(v, c), Fraction(1)) for v in P.points]
    return Polytope.from_description(config, facets, dim=P.dim)


def _signature(facets_of: Sequence[frozenset[int]], sizes: Sequence[int], j: int) -> tuple:
    return len(facets_of[j]), tuple(sorted(sizes[i] for i in facets_of[j]))


def incidence_isomorphism(inc_a: Incidence, inc_b: Incidence) -> Isomorphism | None:
    """Vertex and facet bijections carrying inc_a onto inc_b, by backtracking."""
    m = len(inc_a)
    if m != len(inc_b):
        return None
    n = len(inc_a[0]) if m else 0
    if m and n != len(inc_b[0]):
        return None
    fa = [frozenset(j for j, x in enumerate(row) if x) for row in inc_a]
    fb = [frozenset(j for j, x in enumerate(row) if x) for row in inc_b]
    size_a = [len(f) for f in fa]
    size_b = [len(f) for f in fb]
    if sorted(size_a) != sorted(size_b):
        return None
    va = [frozenset(i for i in range(m) if j in fa[i]) for j in range(n)]
    vb = [frozenset(i for i in range(m) if j in fb[i]) for j in range(n)]
    sig_a = [_signature(va, size_a, j) for j in range(n)]
    sig_b = [_signature(vb, size_b, j) for j in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None

    candidates: dict[tuple, list[int]] = {}
    for j, s in enumerate(sig_b):
        candidates.setdefault(s, []).append(j)

    # rarest signature first, then grow through shared facets
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < n:
        frontier = [j for j in range(n) if j not in placed
                    and (not order or any(va[j] & va[u] for u in order))]
        if not frontier:
            frontier = [j for j in range(n) if j not in placed]
        nxt = min(frontier, key=lambda j: (len(candidates[sig_a[j]]), -sum(
            len(va[j] & va[u]) for u in order), j))
        order.append(nxt)
        placed.add(nxt)

    facet_index_b = {f: i for i, f in enumerate(fb)}
    mapping = [-1] * n
    used = [False] * n

    def extend(pos: int) -> tuple[int, ...] | None:
        if pos == n:
            facet_map = []
            for f in fa:
                image = frozenset(mapping[j] for j in f)
                target = facet_index_b.get(image)
                if target is None:
                    return None
                facet_map.append(target)
            return tuple(facet_map)
        v = order[pos]
        for w in candidates[sig_a[v]]:
            if used[w]:
                continue
            if any(len(va[v] & va[u]) != len(vb[w] & vb[mapping[u]]) for u in order[:pos]):
                continue
            mapping[v] = w
            used[w] = True
            found = extend(pos + 1)
            if found is not None:
                return found
            used[w] = False
            mapping[v] = -1
        return None

    facet_map = extend(0)
    if facet_map is None:
        return None
    return Isomorphism(tuple(mapping), facet_map)


def comb_iso(P: Polytope, Q: Polytope) -> Isomorphism | None:
    if P.n_vertices != Q.n_vertices or P.n_facets != Q.n_facets:
        return None
    return incidence_isomorphism(P.incidence, Q.incidence)


def apexes(P: Polytope) -> list[int]:
    """Vertices lying on every facet but one."""
    return [j for j in range(P.n_vertices) if P.n_facets - len(P.vertex_facet_sets[j]) == 1]


def pyramid_decompose(P: Polytope) -> PyramidDecomposition:
    """Peel apexes (lowest index first) down to a base that is not a pyramid.

    A simplex stops at an edge, so Δ_d decomposes as a (d-1)-fold pyramid over Δ1.
    """
    sets = P.facet_vertex_sets
    alive_vertices = list(range(P.n_vertices))
    alive_facets = list(range(P.n_facets))
    dim = P.dim
    peeled: list[int] = []
    while dim > 1:
        apex = base_facet = None
        for v in alive_vertices:
            missing = [f for f in alive_facets if v not in sets[f]]
            if len(missing) == 1:
                apex, base_facet = v, missing[0]
                break
        if apex is None:
            break
        peeled.append(apex)
        alive_vertices.remove(apex)
        alive_facets.remove(base_facet)
        dim -= 1
    if not peeled:
        return PyramidDecomposition(P, ())
    config = PointConfig(
        P.ambient_dim,
        tuple(P.points[j] for j in alive_vertices),
        tuple(P.labels[j] for j in alive_vertices),
    )
    base = Polytope.from_description(config, (P.facets[f] for f in alive_facets), dim=dim)
    return PyramidDecomposition(base, tuple(P.labels[j] for j in peeled))


def polygon_cycle(P: Polytope) -> tuple[int, ...]:
    """Cyclic vertex order of a 2-polytope, starting at vertex 0."""
    if P.dim != 2:
        raise GeometryError(f"expected a polygon, got dimension {P.dim}")
    neighbours: dict[int, list[int]] = {j: [] for j in range(P.n_vertices)}
    for edge in P.facet_vertex_sets:
        a, b = sorted(edge)
        neighbours[a].append(b)
        neighbours[b].append(a)
    cycle = [0]
    prev, cur = None, 0
    while True:
        options = sorted(w for w in neighbours[cur] if w != prev)
        nxt = options[0]
        if nxt == 0:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
    return tuple(cycle)


# ---------------------------------------------------------------------------
# Projection
# ---------------------------------------------------------------------------


def project(P: Polytope, keep: int) -> Polytope:
    """Hull of the first ``keep`` coordinates of the vertices."""
    if not 0 < keep < P.ambient_dim:
        raise ValueError(f"keep={keep} must be between 1 and {P.ambient_dim - 1}")
    return hull(PointConfig(keep, tuple(p[:keep] for p in P.points), P.labels))


def _facet_class(f: Facet) -> FaceClass:
    last = f.normal[-1]
    if last > 0:
        return FaceClass.UPPER
    if last < 0:
        return FaceClass.LOWER
    return FaceClass.VERTICAL


def face_preservation(Q: Polytope, vertex_indices: Iterable[int]) -> Preservation:
    """Verdict for the face spanned by the given vertices under forgetting the last coordinate."""
    members = frozenset(vertex_indices)
    classes = [_facet_class(Q.facets[i]) for i, s in enumerate(Q.facet_vertex_sets) if members <= s]
    if FaceClass.UPPER in classes and FaceClass.LOWER in classes:
        return Preservation.STRICT
    if classes and all(c is FaceClass.VERTICAL for c in classes):
        return Preservation.PRESERVED
    return Preservation.NOT_PRESERVED


def preserved_faces(Q: Polytope) -> PreservationReport:
    if Q.dim != Q.ambient_dim:
        raise GeometryError("preserved_faces needs a full-dimensional polytope")
    return PreservationReport(
        facet_classes=tuple(_facet_class(f) for f in Q.facets),
        vertices=tuple(face_preservation(Q, [j]) for j in range(Q.n_vertices)),
        facets=tuple(face_preservation(Q, s) for s in Q.facet_vertex_sets),
    )
