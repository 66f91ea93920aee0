"""Gale transforms and the corank-2 enumeration of d-polytopes with d+3 vertices.

Faces are read off positive circuits: a subset whose vectors have a
one-dimensional space of linear dependences spanned by a strictly positive
vector. The complement of a vertex set S is a coface (S is a face) exactly
when every index of the complement lies in a positive circuit inside it, and
facets are the complements of positive circuits.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from . import config
from .exactnum import GeometryError, RMatrix, Vec, null_space, rank
from .polytope import (
    Incidence,
    PointConfig,
    Polytope,
    hull,
    incidence_isomorphism,
    polar_dual,
    pyramid_decompose,
    to_full_dimensional,
)

log = logging.getLogger("fewxc")


# ---------------------------------------------------------------------------
# Gale diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GaleDiagram:
    corank: int
    vectors: tuple[Vec, ...]
    labels: tuple[str, ...]

    def __len__(self) -> int:
        return len(self.vectors)

    @cached_property
    def positive_circuits(self) -> tuple[frozenset[int], ...]:
        """Supports of the positive circuits, smallest first."""
        found = []
        n, r = len(self.vectors), self.corank
        for size in range(1, min(n, r + 1) + 1):
            for subset in combinations(range(n), size):
                if _is_positive_circuit([self.vectors[i] for i in subset], r):
                    found.append(frozenset(subset))
        return tuple(found)


def _is_positive_circuit(vectors: Sequence[Vec], r: int) -> bool:
    # columns are the vectors
    M = RMatrix([[v[i] for v in vectors] for i in range(r)], cols=len(vectors))
    kernel = null_space(M)
    if len(kernel) != 1:
        return False
    lam = kernel[0]
    return all(x > 0 for x in lam) or all(x < 0 for x in lam)


def gale_transform(pts: PointConfig) -> GaleDiagram:
    """Rows of a kernel basis of the homogenized point matrix."""
    n = len(pts)
    rows = [[p[i] for p in pts.points] for i in range(pts.ambient_dim)]
    rows.append([Fraction(1)] * n)
    basis = null_space(RMatrix(rows, cols=n))
    if not basis:
        raise GeometryError("no dependencies")
    vectors = tuple(tuple(b[i] for b in basis) for i in range(n))
    return GaleDiagram(len(basis), vectors, pts.labels)


def _spans(vectors: Sequence[Vec], r: int) -> bool:
    if not vectors:
        return r == 0
    return rank(RMatrix(list(vectors), cols=r)) == r


def is_coface(G: GaleDiagram, indices: Iterable[int]) -> bool:
    """Origin in the relative interior of the hull of the given vectors."""
    members = frozenset(indices)
    if not members:
        return True
    covered = set()
    for circuit in G.positive_circuits:
        if circuit <= members:
            covered |= circuit
    return covered == members


def is_polytopal(G: GaleDiagram) -> bool:
    """Every open half-space through the origin holds at least two vectors."""
    n, r = len(G.vectors), G.corank
    for j in range(n):
        rest = [i for i in range(n) if i != j]
        if not _spans([G.vectors[i] for i in rest], r):
            return False
        covered = set()
        for circuit in G.positive_circuits:
            if j not in circuit:
                covered |= circuit
        if covered != set(rest):
            return False
    return True


def positive_dependence(G: GaleDiagram) -> Vec | None:
    """Strictly positive coefficients with sum(c_i g_i) = 0, or None."""
    total = [Fraction(0)] * len(G.vectors)
    for circuit in G.positive_circuits:
        members = sorted(circuit)
        M = RMatrix([[G.vectors[i][k] for i in members] for k in range(G.corank)],
                    cols=len(members))
        lam = null_space(M)[0]
        if lam[0] < 0:
            lam = tuple(-x for x in lam)
        for i, x in zip(members, lam):
            total[i] += x
    if any(x <= 0 for x in total):
        return None
    return tuple(total)


def faces_from_gale(G: GaleDiagram) -> Incidence:
    """Facet-by-vertex incidence, one row per positive circuit."""
    if not is_polytopal(G):
        raise GeometryError("not polytopal")
    n = len(G.vectors)
    return tuple(tuple(i not in c for i in range(n)) for c in G.positive_circuits)


# ---------------------------------------------------------------------------
# Contracted planar diagrams
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContractedDiagram:
    """Multiplicities at 2k circularly ordered directions plus zero vectors.

    Position j and position j + k are antipodal.
    """

    counts: tuple[int, ...]
    zeros: int = 0

    def __post_init__(self):
        if len(self.counts) % 2 or len(self.counts) < 4:
            raise ValueError("need 2k positions with k >= 2")
        if any(c < 0 for c in self.counts) or self.zeros < 0:
            raise ValueError("multiplicities must be non-negative")

    @property
    def lines(self) -> int:
        return len(self.counts) // 2

    @property
    def size(self) -> int:
        return sum(self.counts) + self.zeros

    def directions(self) -> list[tuple[int, int]]:
        k = self.lines
        upper = [(1, 0)] + [(k - 2 * i, 1) for i in range(1, k)]
        return upper + [(-a, -b) for a, b in upper]

    def vectors(self) -> list[Vec]:
        out: list[Vec] = []
        for (a, b), c in zip(self.directions(), self.counts):
            out += [(Fraction(a), Fraction(b))] * c
        out += [(Fraction(0), Fraction(0))] * self.zeros
        return out

    def gale(self) -> GaleDiagram:
        vectors = tuple(self.vectors())
        return GaleDiagram(2, vectors, tuple(str(i) for i in range(len(vectors))))


def _windows_ok(counts: Sequence[int]) -> bool:
    k = len(counts) // 2
    size = 2 * k
    return all(sum(counts[(s + i) % size] for i in range(k - 1)) >= 2 for s in range(size))


def _reduced(counts: Sequence[int]) -> bool:
    """Every line occupied and no two neighbouring positions empty."""
    k = len(counts) // 2
    size = 2 * k
    if any(counts[j] == 0 and counts[j + k] == 0 for j in range(k)):
        return False
    return not any(counts[j] == 0 and counts[(j + 1) % size] == 0 for j in range(size))


def canonical(counts: Sequence[int]) -> tuple[int, ...]:
    """Least rotation or reflection of the circular sequence."""
    size = len(counts)
    best = None
    for r in range(size):
        for s in (1, -1):
            candidate = tuple(counts[(r + s * i) % size] for i in range(size))
            if best is None or candidate < best:
                best = candidate
    return best


def contracted_facet_count(C: ContractedDiagram) -> int:
    """Antipodal pairs, plus triples capturing the origin, plus zero vectors."""
    k = C.lines
    s = C.counts
    total = sum(s[j] * s[j + k] for j in range(k))
    size = 2 * k
    for p, q, r in combinations(range(size), 3):
        if q - p < k and r - q < k and size - r + p < k:
            total += s[p] * s[q] * s[r]
    return total + C.zeros


def is_polytopal_contracted(C: ContractedDiagram) -> bool:
    return _windows_ok(C.counts)


def _sequences(size: int, total: int) -> Iterator[tuple[int, ...]]:
    """Non-negative sequences of the given length and sum without adjacent zeros."""
    seq = [0] * size

    def fill(pos: int, left: int) -> Iterator[tuple[int, ...]]:
        if pos == size:
            if left == 0 and not (seq[-1] == 0 and seq[0] == 0):
                yield tuple(seq)
            return
        slots_after = size - pos - 1
        for c in range(left + 1):
            if c == 0 and pos > 0 and seq[pos - 1] == 0:
                continue
            # the remaining positions need at least one vector per two slots
            if left - c < slots_after // 2:
                break
            seq[pos] = c
            yield from fill(pos + 1, left - c)
        seq[pos] = 0

    yield from fill(0, total)


def contracted_diagrams(n: int, pyramids: bool = True) -> list[ContractedDiagram]:
    """Canonical polytopal reduced diagrams with n vectors in total."""
    out = []
    for zeros in range(n + 1 if pyramids else 1):
        mass = n - zeros
        for k in range(2, mass + 1):
            for counts in _sequences(2 * k, mass):
                if not _reduced(counts) or not _windows_ok(counts):
                    continue
                if counts != canonical(counts):
                    continue
                out.append(ContractedDiagram(counts, zeros))
    return out


# ---------------------------------------------------------------------------
# Realization and enumeration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EnumeratedType:
    diagram: ContractedDiagram
    incidence: Incidence

    @property
    def facet_count(self) -> int:
        return len(self.incidence)


def realize_gale(G: GaleDiagram) -> Polytope:
    """A polytope whose Gale transform is a positive rescaling of G."""
    lam = positive_dependence(G)
    if lam is None:
        raise GeometryError("not polytopal")
    n = len(G.vectors)
    scaled = [tuple(c * x for x in v) for c, v in zip(lam, G.vectors)]
    rows = [[v[i] for v in scaled] for i in range(G.corank)]
    basis = null_space(RMatrix(rows, cols=n))
    points = tuple(tuple(b[i] for b in basis) for i in range(n))
    P = hull(PointConfig(len(basis), points, G.labels))
    if P.n_vertices != n:
        raise GeometryError("not polytopal")
    return to_full_dimensional(P)


def realize_diagram(C: ContractedDiagram) -> Polytope:
    return realize_gale(C.gale())


def _check_guard(d: int) -> None:
    if not 2 <= d <= config.GALE_MAX_DIM:
        raise GeometryError(f"d={d} outside the enumeration range 2..{config.GALE_MAX_DIM}")


def _dedup(types: list[EnumeratedType]) -> list[EnumeratedType]:
    buckets: dict[tuple, list[EnumeratedType]] = {}
    for t in types:
        key = (t.facet_count, tuple(sorted(Counter(sum(row) for row in t.incidence).items())))
        bucket = buckets.setdefault(key, [])
        if all(incidence_isomorphism(t.incidence, u.incidence) is None for u in bucket):
            bucket.append(t)
    return [t for bucket in buckets.values() for t in bucket]


def enumerate_d_plus_3(
    d: int, facet_count: int | None = None, pyramids: bool = True
) -> list[EnumeratedType]:
    """Combinatorial types of d-polytopes with d+3 vertices."""
    _check_guard(d)
    diagrams = contracted_diagrams(d + 3, pyramids=pyramids)
    if facet_count is not None:
        diagrams = [C for C in diagrams if contracted_facet_count(C) == facet_count]
    log.debug("d=%d: %d candidate diagrams", d, len(diagrams))
    types = config.parallel_map(lambda C: EnumeratedType(C, faces_from_gale(C.gale())), diagrams)
    unique = _dedup(types)
    log.info("d=%d: %d combinatorial types", d, len(unique))
    return unique


def sporadic_d4_vertices(max_dim: int = 7) -> list[tuple[int, Polytope]]:
    """Non-pyramidal d-polytopes with d+4 vertices and d+3 facets, 3 <= d <= max_dim."""
    found = []
    for d in range(3, max_dim + 1):
        for t in enumerate_d_plus_3(d, facet_count=d + 4, pyramids=False):
            Q = polar_dual(realize_diagram(t.diagram))
            if pyramid_decompose(Q).k == 0:
                found.append((d, Q))
        log.info("sporadic search d=%d: %d so far", d, len(found))
    return found
