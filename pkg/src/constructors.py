"""Exact builders: simplices, pyramids, products, sums, joins and lifts.

Constructions with a closed-form facet description (simplex, pyramid, product,
direct sum, join) never call ``hull``; the rest do.
"""

from __future__ import annotations

import logging
import random
from fractions import Fraction
from typing import Sequence

from .exactnum import (
    GeometryError,
    Vec,
    add,
    affine_rank,
    centroid,
    dot,
    scale,
    sub,
    vec,
)
from .models import FamilyKind, FamilySpec
from .polytope import (
    Facet,
    PointConfig,
    Polytope,
    comb_iso,
    hull,
    polygon_cycle,
    to_full_dimensional,
)

log = logging.getLogger("fewxc")

ZERO = Fraction(0)
ONE = Fraction(1)

# Doubling rounds before a far surrogate for a point at infinity is accepted.
_MAX_SURROGATE_ROUNDS = 24


def _unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def _merge_labels(left: Sequence[str], right: Sequence[str]) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if set(left).isdisjoint(right):
        return tuple(left), tuple(right)
    return tuple(f"P.{a}" for a in left), tuple(f"Q.{b}" for b in right)


def _fresh(taken: Sequence[str], stem: str) -> str:
    if stem not in taken:
        return stem
    i = 1
    while f"{stem}{i}" in taken:
        i += 1
    return f"{stem}{i}"


# ---------------------------------------------------------------------------
# Simplices and pyramids
# ---------------------------------------------------------------------------


def simplex(d: int) -> Polytope:
    """Standard simplex conv(0, e_1, ..., e_d)."""
    if d < 1:
        raise GeometryError("zero-dimensional")
    points = ((ZERO,) * d,) + tuple(_unit(d, i) for i in range(d))
    facets = [Facet(tuple(-x for x in _unit(d, i)), ZERO) for i in range(d)]
    facets.append(Facet((ONE,) * d, ONE))
    config = PointConfig(d, points, tuple(str(i) for i in range(d + 1)))
    return Polytope.from_description(config, facets, dim=d)


def pyramid(P: Polytope, k: int = 1) -> Polytope:
    """k-fold pyramid: P at height zero, apexes on k new coordinate axes."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return P
    P = to_full_dimensional(P)
    n = P.dim
    points = [tuple(p) + (ZERO,) * k for p in P.points]
    labels = list(P.labels)
    for j in range(k):
        points.append((ZERO,) * n + _unit(k, j))
        labels.append(_fresh(labels, f"a{j}"))
    facets = [Facet(f.normal + (f.offset,) * k, f.offset) for f in P.facets]
    facets += [Facet((ZERO,) * n + tuple(-x for x in _unit(k, j)), ZERO) for j in range(k)]
    config = PointConfig(n + k, tuple(points), tuple(labels))
    return Polytope.from_description(config, facets, dim=n + k)


# ---------------------------------------------------------------------------
# Products, sums, joins
# ---------------------------------------------------------------------------


def product(P: Polytope, Q: Polytope) -> Polytope:
    P, Q = to_full_dimensional(P), to_full_dimensional(Q)
    p, q = P.dim, Q.dim
    points, labels = [], []
    for v, lv in zip(P.points, P.labels):
        for w, lw in zip(Q.points, Q.labels):
            points.append(tuple(v) + tuple(w))
            labels.append(f"({lv},{lw})")
    facets = [Facet(f.normal + (ZERO,) * q, f.offset) for f in P.facets]
    facets += [Facet((ZERO,) * p + g.normal, g.offset) for g in Q.facets]
    config = PointConfig(p + q, tuple(points), tuple(labels))
    return Polytope.from_description(config, facets, dim=p + q)


def _centred(P: Polytope) -> tuple[list[Vec], list[Vec]]:
    """Vertices translated to the centroid, facets rescaled to a·x <= 1."""
    c = centroid(P.points)
    points = [sub(v, c) for v in P.points]
    normals = []
    for f in P.facets:
        height = f.offset - dot(f.normal, c)
        normals.append(tuple(a / height for a in f.normal))
    return points, normals


def direct_sum(P: Polytope, Q: Polytope) -> Polytope:
    P, Q = to_full_dimensional(P), to_full_dimensional(Q)
    p, q = P.dim, Q.dim
    p_pts, p_normals = _centred(P)
    q_pts, q_normals = _centred(Q)
    left, right = _merge_labels(P.labels, Q.labels)
    points = [v + (ZERO,) * q for v in p_pts] + [(ZERO,) * p + w for w in q_pts]
    facets = [Facet(a + b, ONE) for a in p_normals for b in q_normals]
    config = PointConfig(p + q, tuple(points), left + right)
    return Polytope.from_description(config, facets, dim=p + q)


def join(P: Polytope, Q: Polytope) -> Polytope:
    """P at (x, 0, 0) and Q at (0, y, 1)."""
    P, Q = to_full_dimensional(P), to_full_dimensional(Q)
    p, q = P.dim, Q.dim
    left, right = _merge_labels(P.labels, Q.labels)
    points = [tuple(v) + (ZERO,) * q + (ZERO,) for v in P.points]
    points += [(ZERO,) * p + tuple(w) + (ONE,) for w in Q.points]
    facets = [Facet(f.normal + (ZERO,) * q + (f.offset,), f.offset) for f in P.facets]
    facets += [Facet((ZERO,) * p + g.normal + (-g.offset,), ZERO) for g in Q.facets]
    config = PointConfig(p + q + 1, tuple(points), left + right)
    return Polytope.from_description(config, facets, dim=p + q + 1)


# ---------------------------------------------------------------------------
# Suspensions and Lawrence extensions
# ---------------------------------------------------------------------------


def _check_in_hull_span(P: Polytope, p: Vec) -> None:
    if len(p) != P.ambient_dim:
        raise GeometryError("point outside affine hull")
    if affine_rank(list(P.points) + [p]) != P.dim:
        raise GeometryError("point outside affine hull")


def _lift(P: Polytope, p: Vec, heights: tuple[int, int], names: tuple[str, str]) -> Polytope:
    points = [tuple(v) + (ZERO,) for v in P.points]
    labels = list(P.labels)
    for h, name in zip(heights, names):
        points.append(tuple(p) + (Fraction(h),))
        labels.append(_fresh(labels, name))
    return hull(PointConfig(P.ambient_dim + 1, tuple(points), tuple(labels)))


def _at_infinity(P: Polytope, direction: Vec, build) -> Polytope:
    """Far finite surrogate for a point at infinity, doubled until stable."""
    if len(direction) != P.ambient_dim or not any(direction):
        raise GeometryError("point outside affine hull")
    c = centroid(P.points)
    if affine_rank(list(P.points) + [add(c, direction)]) != P.dim:
        raise GeometryError("point outside affine hull")
    spread = max((abs(x) for v in P.points for x in sub(v, c)), default=ONE) or ONE
    t = Fraction(4) * spread * (1 + max(abs(x) for x in direction))
    current = build(add(c, scale(t, direction)))
    for _ in range(_MAX_SURROGATE_ROUNDS):
        t *= 2
        farther = build(add(c, scale(t, direction)))
        if comb_iso(current, farther) is not None:
            return current
        current = farther
    raise GeometryError("point at infinity did not stabilise")


def one_point_suspension(P: Polytope, p: Sequence, at_infinity: bool = False) -> Polytope:
    """conv(P x 0, (p, 1), (p, -1)); ``at_infinity`` reads p as a direction."""
    p = vec(p)

    def build(point: Vec) -> Polytope:
        return _lift(P, point, (1, -1), ("s+", "s-"))

    if at_infinity:
        return _at_infinity(P, p, build)
    _check_in_hull_span(P, p)
    return build(p)


def lawrence_extension(P: Polytope, p: Sequence, at_infinity: bool = False) -> Polytope:
    """conv(P x 0, (p, 1), (p, 2)); p must lie outside P."""
    p = vec(p)

    def build(point: Vec) -> Polytope:
        return _lift(P, point, (1, 2), ("l1", "l2"))

    if at_infinity:
        return _at_infinity(P, p, build)
    _check_in_hull_span(P, p)
    if P.contains(p):
        raise GeometryError("absorbed lift point")
    return build(p)


# ---------------------------------------------------------------------------
# Cyclic polytopes
# ---------------------------------------------------------------------------


def cyclic(d: int, n: int, params: Sequence | None = None) -> Polytope:
    """Hull of n points on the moment curve t -> (t, t^2, ..., t^d)."""
    if d < 2:
        raise GeometryError("cyclic polytopes need d >= 2")
    if n < d + 1:
        raise GeometryError(f"need at least {d + 1} points, got {n}")
    ts = vec(params) if params is not None else tuple(Fraction(i) for i in range(1, n + 1))
    if len(ts) != n:
        raise ValueError(f"expected {n} parameters, got {len(ts)}")
    if any(b <= a for a, b in zip(ts, ts[1:])):
        raise GeometryError("repeated parameters")
    points = tuple(tuple(t ** e for e in range(1, d + 1)) for t in ts)
    return hull(PointConfig(d, points, tuple(str(i) for i in range(n))))


# ---------------------------------------------------------------------------
# Desarguian hexagons
# ---------------------------------------------------------------------------

_DESARGUIAN_PAIRS = ((0, 1), (5, 2), (3, 4))


def desarguian_hexagon(
    center: Sequence, rays: Sequence[Sequence], picks: Sequence
) -> Polytope:
    """Hexagon with two points on each of three lines through ``center``.

    ``center`` is homogeneous (x, y, w). For w != 0 the points are
    c + t*ray. For w == 0 the lines are parallel to (x, y) and each ray entry
    is an anchor point on its line. ``picks`` holds two parameters per line.
    Vertices come back in cyclic order labeled p0..p5 with the line pairs at
    positions {0,1}, {5,2}, {3,4}.
    """
    center = vec(center)
    rays = [vec(r) for r in rays]
    picks = vec(picks)
    if len(center) != 3 or len(rays) != 3 or len(picks) != 6:
        raise ValueError("need a homogeneous center, three rays and six picks")
    x, y, w = center
    points = []
    for i, ray in enumerate(rays):
        for t in picks[2 * i: 2 * i + 2]:
            if w != 0:
                points.append(add((x / w, y / w), scale(t, ray)))
            else:
                points.append(add(ray, scale(t, (x, y))))
    line_of = {i: i // 2 for i in range(6)}
    try:
        H = hull(PointConfig(2, tuple(points), tuple(str(i) for i in range(6))))
    except GeometryError:
        raise GeometryError("not a hexagon with the required labeling") from None
    if H.dim != 2 or H.n_vertices != 6:
        raise GeometryError("not a hexagon with the required labeling")

    cycle = [int(H.labels[j]) for j in polygon_cycle(H)]
    for r in range(6):
        for s in (1, -1):
            order = [cycle[(r + s * i) % 6] for i in range(6)]
            if all(line_of[order[a]] == line_of[order[b]] for a, b in _DESARGUIAN_PAIRS):
                config = PointConfig(2, tuple(points[i] for i in order),
                                     tuple(f"p{i}" for i in range(6)))
                return hull(config)
    raise GeometryError("not a hexagon with the required labeling")


def random_desarguian_hexagon(rng: random.Random) -> Polytope:
    """Desarguian hexagon with a finite concurrency point.

    Two points on each of the rays u_A, u_B = u_A + u_C and u_C from a random
    center, placed so that the inner chain bends toward the center and the
    outer chain away from it.
    """
    def small() -> Fraction:
        return Fraction(rng.randint(1, 9), rng.randint(1, 4))

    while True:
        u_a = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        u_c = (Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)))
        if u_a[0] * u_c[1] - u_a[1] * u_c[0] != 0:
            break
    u_b = add(u_a, u_c)
    a1 = small()
    a0 = a1 + small()
    c1 = small()
    c0 = c1 + small()
    inner = a1 * c1 / (a1 + c1)
    outer = a0 * c0 / (a0 + c0)
    b1 = inner * Fraction(rng.randint(1, 9), 10)
    b2 = outer + small()
    center = (Fraction(rng.randint(-9, 9)), Fraction(rng.randint(-9, 9)), ONE)
    return desarguian_hexagon(center, (u_a, u_b, u_c), (a0, a1, b1, b2, c1, c0))


def perturb_vertex(P: Polytope, index: int, delta: Sequence) -> Polytope:
    """Hull after moving one vertex by ``delta``."""
    delta = vec(delta)
    points = list(P.points)
    points[index] = add(points[index], delta)
    return hull(PointConfig(P.ambient_dim, tuple(points), P.labels))


# ---------------------------------------------------------------------------
# Families
# ---------------------------------------------------------------------------


def pyramid_product(k: int, n: int, m: int) -> Polytope:
    """pyr_k(Δn × Δm), the d-polytopes with d+2 facets."""
    return pyramid(product(simplex(n), simplex(m)), k)


def pyramid_sum(k: int, n: int, m: int) -> Polytope:
    """pyr_k(Δn ⊕ Δm), the d-polytopes with d+2 vertices."""
    return pyramid(direct_sum(simplex(n), simplex(m)), k)


def join_family(k: int, n: int, m: int) -> Polytope:
    """pyr_k((Δ1 × Δ2) ⋆ (Δn ⊕ Δm)), a (k+n+m+4)-polytope with d+4 vertices."""
    prism = product(simplex(1), simplex(2))
    return pyramid(join(prism, direct_sum(simplex(n), simplex(m))), k)


def build_family(spec: FamilySpec) -> Polytope:
    log.debug("building %s", spec)
    if spec.kind is FamilyKind.SIMPLEX:
        return simplex(spec.n)
    if spec.kind is FamilyKind.PYRAMID_PRODUCT:
        return pyramid_product(spec.k, spec.n, spec.m)
    if spec.kind is FamilyKind.PYRAMID_SUM:
        return pyramid_sum(spec.k, spec.n, spec.m)
    return join_family(spec.k, spec.n, spec.m)


def family_specs(kind: FamilyKind, total: int) -> list[FamilySpec]:
    """All (k, n, m) with k + n + m = total and 1 <= n <= m."""
    specs = []
    for k in range(total + 1):
        for n in range(1, (total - k) // 2 + 1):
            m = total - k - n
            if m >= n:
                specs.append(FamilySpec(kind=kind, k=k, n=n, m=m))
    return specs


def distinct_types(polytopes: Sequence[Polytope]) -> list[int]:
    """Indices of the first member of each combinatorial class."""
    kept: list[int] = []
    for i, P in enumerate(polytopes):
        if all(comb_iso(P, polytopes[j]) is None for j in kept):
            kept.append(i)
    return kept


def d_plus_2_types(d: int) -> list[FamilySpec]:
    """Specs of the combinatorially distinct d-polytopes with d+2 vertices."""
    specs = family_specs(FamilyKind.PYRAMID_SUM, d)
    built = [build_family(s) for s in specs]
    return [specs[i] for i in distinct_types(built)]


def d_plus_2_count(d: int) -> dict:
    """Count of d+2-vertex types, set against ⌊d²/4⌋ and ⌊d²/2⌋."""
    count = len(d_plus_2_types(d))
    quarter, half = d * d // 4, d * d // 2
    if count == quarter:
        holds = "floor(d^2/4)"
    elif count == half:
        holds = "floor(d^2/2)"
    else:
        holds = "neither"
    return {"d": d, "types": count, "floor_d2_over_4": quarter,
            "floor_d2_over_2": half, "matches": holds}

