"""Independent checks: slack matrices, rectangle covers, extension certificates."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import NamedTuple

from . import config
from .exactnum import RMatrix
from .polytope import Polytope, project, to_full_dimensional

log = logging.getLogger("fewxc")


class CoverLimitError(ValueError):
    """The rectangle cover search is outside its size or node budget."""


@dataclass(frozen=True)
class ExtensionCertificate:
    """Q projects onto the target by keeping its first ``keep`` coordinates."""

    Q: Polytope
    keep: int


class Verification(NamedTuple):
    ok: bool
    facet_count: int


def slack_matrix(P: Polytope) -> RMatrix:
    """Facets by vertices, entry offset - normal·vertex."""
    return RMatrix([[f.slack(v) for v in P.points] for f in P.facets], cols=P.n_vertices)


# ---------------------------------------------------------------------------
# Rectangle covering
# ---------------------------------------------------------------------------


def _maximal_rectangles(support: list[int], n_rows: int, n_cols: int) -> list[tuple[int, int]]:
    """(row mask, column mask) of every maximal all-positive rectangle."""
    col_masks = [0] * n_cols
    for i, row in enumerate(support):
        for j in range(n_cols):
            if row >> j & 1:
                col_masks[j] |= 1 << i
    # enumerate over subsets of the shorter side
    if n_rows <= n_cols:
        side, other, count = support, col_masks, n_rows
    else:
        side, other, count = col_masks, support, n_cols
    full = (1 << len(other)) - 1
    seen = set()
    for subset in range(1, 1 << count):
        common = full
        for i in range(count):
            if subset >> i & 1:
                common &= side[i]
        if not common:
            continue
        closure = full
        for j in range(len(other)):
            if common >> j & 1:
                closure &= other[j]
        seen.add((closure, common))
    if n_rows <= n_cols:
        return sorted(seen)
    return sorted((rows, cols) for cols, rows in seen)


class _CoverInstance(NamedTuple):
    cells: list[tuple[int, int]]
    support: list[int]
    rects: list[int]
    covering: list[list[int]]


def _cover_instance(S: RMatrix) -> _CoverInstance:
    """Support cells of S, maximal rectangles as cell masks, rectangles through each cell."""
    m, n = S.shape
    if m * n > config.COVER_GUARD:
        raise CoverLimitError("support too large for exact cover")
    support = [sum(1 << j for j in range(n) if S[i, j] > 0) for i in range(m)]
    cells = [(i, j) for i in range(m) for j in range(n) if support[i] >> j & 1]
    index = {c: b for b, c in enumerate(cells)}
    rects = []
    for rows, cols in _maximal_rectangles(support, m, n):
        mask = 0
        for i in range(m):
            if rows >> i & 1:
                for j in range(n):
                    if cols >> j & 1:
                        mask |= 1 << index[(i, j)]
        rects.append(mask)
    covering = [[r for r, mask in enumerate(rects) if mask >> b & 1] for b in range(len(cells))]
    return _CoverInstance(cells, support, rects, covering)


def _fractional(inst: _CoverInstance, uncovered: int) -> int:
    """Ceiling of the sum over uncovered cells of 1 / (largest uncovered part of a rectangle through it).

    Any cover spends at most 1 per rectangle in this sum.
    """
    total = Fraction(0)
    left = uncovered
    while left:
        b = (left & -left).bit_length() - 1
        left &= left - 1
        total += Fraction(1, max((inst.rects[r] & uncovered).bit_count() for r in inst.covering[b]))
    return ceil(total)


def fractional_cover_bound(S: RMatrix) -> int:
    """Lower bound on the rectangle cover number from the fractional relaxation."""
    inst = _cover_instance(S)
    return _fractional(inst, (1 << len(inst.cells)) - 1)


def rectangle_cover_bound(S: RMatrix) -> int:
    """Minimum number of all-positive rectangles covering the support of S."""
    inst = _cover_instance(S)
    cells, support, rects, covering = inst
    if not cells:
        return 0
    compatible = []
    for (i, j) in cells:
        mask = 0
        for b, (k, l) in enumerate(cells):
            if support[i] >> l & 1 and support[k] >> j & 1:
                mask |= 1 << b
        compatible.append(mask)

    def independent(uncovered: int) -> int:
        """Greedy set of cells no two of which share a rectangle."""
        count = 0
        left = uncovered
        while left:
            b = (left & -left).bit_length() - 1
            count += 1
            left &= ~compatible[b]
        return count

    def greedy(uncovered: int) -> int:
        used = 0
        while uncovered:
            uncovered &= ~max(rects, key=lambda r: (r & uncovered).bit_count())
            used += 1
        return used

    all_cells = (1 << len(cells)) - 1
    best = greedy(all_cells)
    nodes = 0

    def search(uncovered: int, used: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if nodes > config.COVER_NODES:
            raise CoverLimitError("support too large for exact cover")
        if not uncovered:
            best = min(best, used)
            return
        if used + max(independent(uncovered), _fractional(inst, uncovered)) >= best:
            return
        bits = [b for b in range(len(cells)) if uncovered >> b & 1]
        pivot = min(bits, key=lambda b: len(covering[b]))
        options = sorted(covering[pivot], key=lambda r: -(rects[r] & uncovered).bit_count())
        for r in options:
            search(uncovered & ~rects[r], used + 1)

    search(all_cells, 0)
    log.debug("rectangle cover %dx%d: %d rectangles, %d nodes", *S.shape, best, nodes)
    return best


# ---------------------------------------------------------------------------
# Certificates and intervals
# ---------------------------------------------------------------------------


def identity_certificate(P: Polytope) -> ExtensionCertificate:
    return ExtensionCertificate(P, P.ambient_dim)


def verify_extension(P: Polytope, cert: ExtensionCertificate) -> Verification:
    """Exact vertex-set equality of P with the shadow of cert.Q."""
    Q = cert.Q
    m = Q.n_facets
    if cert.keep != P.ambient_dim or cert.keep > Q.ambient_dim:
        return Verification(False, m)
    if cert.keep == Q.ambient_dim:
        return Verification(set(Q.points) == set(P.points), m)
    try:
        shadow = project(Q, cert.keep)
    except (ValueError, ArithmeticError) as exc:
        log.debug("projection failed: %s", exc)
        return Verification(False, m)
    ok = set(shadow.points) == set(P.points)
    return Verification(ok, m)


def xc_interval(P: Polytope) -> tuple[int, int]:
    """[max(d+1, rectangle cover bound), min(n, m)]."""
    P = to_full_dimensional(P)
    lo = P.dim + 1
    try:
        lo = max(lo, rectangle_cover_bound(slack_matrix(P)))
    except CoverLimitError:
        log.warning("cover bound skipped for %r", P)
    return lo, min(P.n_vertices, P.n_facets)

