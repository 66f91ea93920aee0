"""Exact extension complexity for d-polytopes with at most d+4 vertices or facets.

``classify_xc`` walks the case split on (d, n, m): simplices, d+2 and d+3
vertices or facets, then the d+4 analysis (hexagon pyramids, prism subsets,
everything else). Outside that range it returns the interval from the oracle.
Every exact answer carries a certificate that ``check_certificate`` re-verifies.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from . import config
from .constructors import product, simplex
from .exactnum import (
    GeometryError,
    RMatrix,
    Vec,
    affine_rank,
    concurrent,
    format_rational,
    line_through,
    null_space,
    rank,
    solve,
)
from .gale import gale_transform
from .oracle import ExtensionCertificate, verify_extension, xc_interval
from .polytope import (
    PointConfig,
    Polytope,
    PreservationReport,
    comb_iso,
    hull,
    polar_dual,
    polygon_cycle,
    preserved_faces,
    pyramid_decompose,
    to_full_dimensional,
)

log = logging.getLogger("fewxc")


class Case(StrEnum):
    SIMPLEX = "simplex"
    FACETS_D2 = "facets_d2"
    FACETS_D3_SPORADIC = "facets_d3_sporadic"
    VERTICES_LE_D3 = "vertices_le_d3"
    DESARGUIAN_PYRAMID = "desarguian_pyramid"
    PRISM_SUBSET = "prism_subset"
    GENERIC_D4 = "generic_d4"
    OUT_OF_SCOPE = "out_of_scope"


@dataclass(frozen=True)
class Interval:
    lo: int
    hi: int


@dataclass(frozen=True)
class XcResult:
    value: int | Interval
    case: Case
    certificate: dict = field(default_factory=dict)
    extension: ExtensionCertificate | None = None
    dualized: bool = False

    @property
    def exact(self) -> bool:
        return not isinstance(self.value, Interval)


@dataclass(frozen=True)
class DesarguianWitness:
    """Labeling p_i = cycle[(rotation ± i) mod 6] and the common point of the three lines."""

    rotation: int
    reflected: bool
    point: Vec
    labels: tuple[str, ...]

    def as_dict(self) -> dict:
        return {
            "rotation": self.rotation,
            "reflected": self.reflected,
            "labels": list(self.labels),
            "point": [format_rational(x) for x in self.point],
        }


@dataclass(frozen=True)
class HexagonLift:
    Q: Polytope
    heights: dict[str, Fraction]
    report: PreservationReport


# ---------------------------------------------------------------------------
# Hexagons
# ---------------------------------------------------------------------------


def _as_hexagon(H: Polytope) -> Polytope:
    if H.dim != 2 or H.n_vertices != 6:
        raise GeometryError("not a hexagon with the required labeling")
    return to_full_dimensional(H)


def desarguian_test(H: Polytope) -> DesarguianWitness | None:
    """First labeling (rotation, then reflection) making p0p1, p5p2, p3p4 concurrent."""
    H2 = _as_hexagon(H)
    cycle = polygon_cycle(H2)
    for r in range(6):
        for s in (1, -1):
            p = [H2.points[cycle[(r + s * i) % 6]] for i in range(6)]
            lines = (line_through(p[0], p[1]), line_through(p[5], p[2]),
                     line_through(p[3], p[4]))
            hit = concurrent(*lines)
            if hit.concurrent:
                labels = tuple(H2.labels[cycle[(r + s * i) % 6]] for i in range(6))
                return DesarguianWitness(r, s < 0, hit.point, labels)
    return None


# lateral quads of the prism over triangles {p0, p5, p4} and {p1, p2, p3}
_LATERAL_QUADS = ((0, 5, 2, 1), (5, 4, 3, 2), (4, 0, 1, 3))
_TOP = (1, 2, 3)


def _planarity_rows(points: Sequence[Vec]) -> list[list[Fraction]]:
    """det[x, y, h, 1] = 0 over each lateral quad, as linear forms in the six heights."""
    rows = []
    for quad in _LATERAL_QUADS:
        row = [Fraction(0)] * 6
        for pos, i in enumerate(quad):
            minor = [
                (points[j][0], points[j][1], Fraction(1)) for j in quad if j != i
            ]
            sign = -1 if (pos + 2) % 2 else 1
            row[i] = sign * _det3(minor)
        rows.append(row)
    return rows


def _det3(m: Sequence[Sequence[Fraction]]) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def lift_hexagon(H: Polytope, w: DesarguianWitness) -> HexagonLift:
    """A combinatorial prism in R^3 whose shadow is exactly the hexagon.

    The triangle p0 p5 p4 stays at height zero. The heights of p1 p2 p3 solve the
    lateral planarity system with one of them fixed to 1.
    """
    H2 = _as_hexagon(H)
    index = {label: j for j, label in enumerate(H2.labels)}
    points = [H2.points[index[label]] for label in w.labels]
    target = hull(PointConfig(2, tuple(points), w.labels))
    prism = product(simplex(1), simplex(2))
    planarity = [[row[j] for j in _TOP] for row in _planarity_rows(points)]
    for fixed in range(3):
        pin = [Fraction(int(t == fixed)) for t in range(3)]
        top = solve(RMatrix(planarity + [pin], cols=3), (0, 0, 0, 1))
        if top is None:
            continue
        h = [Fraction(0)] * 6
        for j, x in zip(_TOP, top):
            h[j] = x
        Q = hull(PointConfig(3, tuple(p + (x,) for p, x in zip(points, h)), w.labels))
        if Q.n_vertices != 6 or comb_iso(Q, prism) is None:
            continue
        if set(target.points) != {q[:2] for q in Q.points}:
            continue
        return HexagonLift(Q, dict(zip(w.labels, h)), preserved_faces(Q))
    raise GeometryError("lift not found")


def lift_pyramid(P: Polytope, heights: dict[str, Fraction]) -> ExtensionCertificate:
    """Append a height coordinate to every vertex of P (apexes at zero)."""
    lifted = tuple(
        tuple(p) + (heights.get(label, Fraction(0)),) for p, label in zip(P.points, P.labels)
    )
    Q = hull(PointConfig(P.ambient_dim + 1, lifted, P.labels))
    return ExtensionCertificate(Q, P.ambient_dim)


# ---------------------------------------------------------------------------
# Prism subsets and structure
# ---------------------------------------------------------------------------


def _prism_hit(P: Polytope, subset: tuple[int, ...], prism: Polytope) -> bool:
    pts = [P.points[i] for i in subset]
    if affine_rank(pts) != 3:
        return False
    H = hull(PointConfig(P.ambient_dim, tuple(pts), tuple(P.labels[i] for i in subset)))
    return H.n_vertices == 6 and comb_iso(H, prism) is not None


def find_prism_subset(P: Polytope) -> tuple[str, ...] | None:
    """Labels of the lexicographically first six vertices spanning a combinatorial prism."""
    if P.n_vertices < 6:
        return None
    prism = product(simplex(1), simplex(2))
    subsets = list(combinations(range(P.n_vertices), 6))
    block = max(1, len(subsets) // (4 * config.THREADS) + 1)
    chunks = [subsets[i:i + block] for i in range(0, len(subsets), block)]

    def first_hit(chunk):
        return next((s for s in chunk if _prism_hit(P, s, prism)), None)

    for hit in config.parallel_map(first_hit, chunks):
        if hit is not None:
            return tuple(P.labels[i] for i in hit)
    return None


@dataclass(frozen=True)
class JoinStructure:
    k: int
    n: int
    m: int


@dataclass(frozen=True)
class ChainStep:
    kind: str
    labels: tuple[str, str]
    point: Vec


@dataclass(frozen=True)
class ChainStructure:
    prism: tuple[str, ...]
    pyramids: int
    steps: tuple[ChainStep, ...]
    base_point: Vec

    @property
    def lawrence(self) -> int:
        return sum(1 for s in self.steps if s.kind == "lawrence")

    @property
    def suspensions(self) -> int:
        return sum(1 for s in self.steps if s.kind == "suspension")


def _hom_rank(vectors: Sequence[Vec]) -> int:
    if not vectors:
        return 0
    return rank(RMatrix(list(vectors), cols=len(vectors[0])))


def _chain(prism: tuple[str, ...], B: list[Vec], A: list[tuple[str, Vec]]) -> ChainStructure:
    """Peel Lawrence and suspension steps off the homogeneous configuration B ∪ A."""
    pyramids = 0
    steps: list[ChainStep] = []
    fresh = 0
    while len(A) > 1:
        everything = B + [v for _, v in A]
        total = _hom_rank(everything)
        apex = next(
            (i for i, (_, v) in enumerate(A)
             if _hom_rank(B + [u for j, (_, u) in enumerate(A) if j != i]) == total - 1),
            None,
        )
        if apex is not None:
            del A[apex]
            pyramids += 1
            continue
        for i in range(len(A) - 1, 0, -1):
            found = False
            for j in range(i - 1, -1, -1):
                (lx, x), (ly, y) = A[i], A[j]
                rest = B + [v for t, (_, v) in enumerate(A) if t not in (i, j)]
                if _hom_rank(rest) != total - 1:
                    continue
                if _hom_rank(rest + [x]) != total or _hom_rank(rest + [y]) != total:
                    continue
                cols = [x, y] + rest
                M = RMatrix([[v[c] for v in cols] for c in range(len(x))], cols=len(cols))
                coeffs = next(v for v in null_space(M) if v[0] != 0 or v[1] != 0)
                cx, cy = coeffs[0], coeffs[1]
                kind = "suspension" if cx * cy > 0 else "lawrence"
                p = tuple(cx * a + cy * b for a, b in zip(x, y))
                if p[-1] != 0:
                    p = tuple(t / p[-1] for t in p)
                elif cx < 0:
                    # at infinity: point from y toward x
                    p = tuple(-t for t in p)
                fresh += 1
                steps.append(ChainStep(kind, (lx, ly), p))
                A = [a for t, a in enumerate(A) if t not in (i, j)] + [(f"q{fresh}", p)]
                found = True
                break
            if found:
                break
        else:
            raise GeometryError("not in case (2) structure")
    return ChainStructure(prism, pyramids, tuple(steps), A[0][1] if A else ())


def decompose_structure(
    P: Polytope, prism_labels: Sequence[str] | None = None
) -> JoinStructure | ChainStructure:
    """Join or Lawrence/suspension chain form of a d+4-vertex polytope with a prism subset."""
    P = to_full_dimensional(P)
    d = P.dim
    if prism_labels is None:
        prism_labels = find_prism_subset(P)
    if prism_labels is None or P.n_vertices != d + 4:
        raise GeometryError("not in case (2) structure")
    prism = tuple(prism_labels)
    others = [j for j, label in enumerate(P.labels) if label not in prism]
    A_points = [P.points[j] for j in others]
    dim_a = affine_rank(A_points)

    if dim_a == d - 4:
        A = hull(PointConfig(P.ambient_dim, tuple(A_points), tuple(P.labels[j] for j in others)))
        if A.n_vertices != len(others):
            raise GeometryError("not in case (2) structure")
        dec = pyramid_decompose(A)
        G = gale_transform(dec.base.vertices)
        if G.corank != 1:
            raise GeometryError("not in case (2) structure")
        plus = sum(1 for v in G.vectors if v[0] > 0)
        minus = sum(1 for v in G.vectors if v[0] < 0)
        n, m = sorted((plus - 1, minus - 1))
        if n < 1 or plus + minus != dec.base.n_vertices:
            raise GeometryError("not in case (2) structure")
        return JoinStructure(dec.k, n, m)

    if dim_a == d - 3:
        index = {label: j for j, label in enumerate(P.labels)}
        B = [tuple(P.points[index[label]]) + (Fraction(1),) for label in prism]
        A = [(P.labels[j], tuple(P.points[j]) + (Fraction(1),)) for j in others]
        return _chain(prism, B, A)

    raise GeometryError("not in case (2) structure")


# ---------------------------------------------------------------------------
# Decision tree
# ---------------------------------------------------------------------------


def _classify_d4_vertices(P: Polytope, dualized: bool) -> XcResult:
    """P has d+4 vertices and at least d+4 facets."""
    d = P.dim
    dec = pyramid_decompose(P)
    base = dec.base
    if base.dim == 2 and base.n_vertices == 6:
        w = desarguian_test(base)
        if w is not None:
            lift = lift_hexagon(base, w)
            extension = lift_pyramid(P, lift.heights)
            certificate = {
                "labeling": w.as_dict(),
                "apexes": list(dec.apex_labels),
                "pyramid_k": dec.k,
            }
            return XcResult(d + 3, Case.DESARGUIAN_PYRAMID, certificate, extension, dualized)
        hexagon = "not desarguian"
    else:
        hexagon = "base is not a hexagon"
    labels = find_prism_subset(P)
    if labels is not None:
        return XcResult(d + 3, Case.PRISM_SUBSET, {"prism": list(labels)}, None, dualized)
    certificate = {
        "pyramid_k": dec.k,
        "hexagon_test": hexagon,
        "subsets_checked": comb(P.n_vertices, 6),
    }
    return XcResult(d + 4, Case.GENERIC_D4, certificate, None, dualized)


def classify_xc(P: Polytope) -> XcResult:
    P = to_full_dimensional(P)
    d, n, m = P.dim, P.n_vertices, P.n_facets
    log.debug("classify d=%d n=%d m=%d", d, n, m)
    counts = {"d": d, "vertices": n, "facets": m}
    low = min(n, m)

    if n == d + 1:
        return XcResult(d + 1, Case.SIMPLEX, counts)
    if low == d + 2:
        case = Case.FACETS_D2 if m == d + 2 else Case.VERTICES_LE_D3
        return XcResult(d + 2, case, counts)
    if {n, m} == {d + 3, d + 4}:
        dualized = n == d + 3
        Q = polar_dual(P) if dualized else P
        certificate = dict(counts)
        prism = find_prism_subset(Q)
        if prism is not None:
            certificate["prism"] = list(prism)
        return XcResult(d + 3, Case.FACETS_D3_SPORADIC, certificate, None, dualized)
    if low == d + 3:
        return XcResult(d + 3, Case.VERTICES_LE_D3, counts, None, m < n)
    if low == d + 4:
        if n == d + 4:
            return _classify_d4_vertices(P, dualized=False)
        return _classify_d4_vertices(polar_dual(P), dualized=True)

    lo, hi = xc_interval(P)
    counts["cover_bound"] = lo
    return XcResult(Interval(lo, hi), Case.OUT_OF_SCOPE, counts)


def certificate_target(P: Polytope, result: XcResult) -> Polytope:
    """The polytope the certificate talks about (the polar when dualized)."""
    P = to_full_dimensional(P)
    return polar_dual(P) if result.dualized else P


def check_certificate(P: Polytope, result: XcResult) -> bool:
    """Re-verify a classification from scratch."""
    target = certificate_target(P, result)
    if result.case is Case.DESARGUIAN_PYRAMID:
        if result.extension is None:
            return False
        ok, facets = verify_extension(target, result.extension)
        return ok and facets == result.value
    if result.case is Case.PRISM_SUBSET:
        labels = result.certificate.get("prism", [])
        index = {label: j for j, label in enumerate(target.labels)}
        if len(labels) != 6 or any(label not in index for label in labels):
            return False
        subset = tuple(sorted(index[label] for label in labels))
        prism = product(simplex(1), simplex(2))
        return _prism_hit(target, subset, prism) and result.value == target.dim + 3
    fresh = classify_xc(P)
    return fresh.value == result.value and fresh.case == result.case
