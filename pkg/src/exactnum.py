"""Exact rational scalars, matrices and projective-plane primitives.

Every number that touches geometry in this package is a ``Fraction``. Matrices
are stored as object-dtype numpy arrays of Fractions; elimination scales each
row to integers and runs fraction-free (Bareiss) so that intermediate values
never need a gcd until the very end.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

Rational = Fraction
Vec = tuple[Fraction, ...]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


class GeometryError(ValueError):
    """A geometric precondition does not hold."""


class RationalParseError(ValueError):
    """A token could not be read as an exact rational."""


# --- Scalars and vectors ---


def to_rational(token) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an int into a Fraction. Floats are refused."""
    if isinstance(token, Fraction):
        return token
    if isinstance(token, bool):
        raise RationalParseError(f"malformed rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if isinstance(token, str):
        text = token.strip()
        if _RATIONAL_RE.fullmatch(text):
            try:
                return Fraction(text)
            except ZeroDivisionError:
                pass
    raise RationalParseError(f"malformed rational: {token!r}")


def format_rational(q) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    return str(Fraction(q))


def vec(values: Iterable) -> Vec:
    return tuple(to_rational(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, v: Sequence[Fraction]) -> Vec:
    return tuple(c * x for x in v)


def centroid(points: Sequence[Sequence[Fraction]]) -> Vec:
    n = len(points)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


def primitive(v: Sequence[Fraction]) -> Vec:
    """Positive rescaling of ``v`` to coprime integers (zero vectors unchanged)."""
    if not any(v):
        return tuple(Fraction(x) for x in v)
    lcm = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * lcm) for x in v]
    g = math.gcd(*ints)
    return tuple(Fraction(x // g) for x in ints)


# --- Matrices ---


class RMatrix:
    """Rectangular grid of exact rationals backed by an object-dtype array."""

    __slots__ = ("_data",)

    def __init__(self, rows: Iterable[Iterable], cols: int | None = None):
        grid = [[to_rational(x) for x in row] for row in rows]
        if grid:
            width = len(grid[0])
            if any(len(row) != width for row in grid):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        data = np.empty((len(grid), width), dtype=object)
        for i, row in enumerate(grid):
            for j, x in enumerate(row):
                data[i, j] = x
        data.flags.writeable = False
        self._data = data

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry {key} outside {self.rows}x{self.cols} matrix")
        return self._data[i, j]

    def row(self, i: int) -> Vec:
        if not 0 <= i < self.rows:
            raise IndexError(f"row {i} outside {self.rows}x{self.cols} matrix")
        return tuple(self._data[i, :])

    def column(self, j: int) -> Vec:
        if not 0 <= j < self.cols:
            raise IndexError(f"column {j} outside {self.rows}x{self.cols} matrix")
        return tuple(self._data[:, j])

    def tolist(self) -> list[list[Fraction]]:
        return [list(self._data[i, :]) for i in range(self.rows)]

    def transpose(self) -> RMatrix:
        return RMatrix([list(self._data[:, j]) for j in range(self.cols)], cols=self.rows)

    def apply(self, v: Sequence[Fraction]) -> Vec:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} against {self.cols} columns")
        if self.cols == 0:
            return tuple(Fraction(0) for _ in range(self.rows))
        out = self._data.dot(np.array(list(v), dtype=object))
        return tuple(Fraction(x) for x in out)

    def __matmul__(self, other: RMatrix) -> RMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return RMatrix([[0] * other.cols for _ in range(self.rows)], cols=other.cols)
        return RMatrix(self._data.dot(other._data).tolist(), cols=other.cols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.shape == other.shape and self.tolist() == other.tolist()

    def __hash__(self) -> int:
        return hash((self.shape, tuple(tuple(r) for r in self.tolist())))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self.tolist())
        return f"RMatrix({self.rows}x{self.cols}: {body})"


def _integer_rows(rows: Iterable[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        lcm = math.lcm(*(q.denominator for q in row)) if row else 1
        out.append([int(q * lcm) for q in row])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int], int]:
    """Fraction-free row echelon form. Returns (rows, pivot columns, swap count)."""
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots: list[int] = []
    swaps = 0
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
            swaps += 1
        pivot_row = a[r]
        pivot = pivot_row[c]
        for i in range(r + 1, nrows):
            row = a[i]
            lead = row[c]
            for j in range(c + 1, ncols):
                row[j] = (pivot * row[j] - lead * pivot_row[j]) // prev
            row[c] = 0
        prev = pivot
        pivots.append(c)
        r += 1
    return a, pivots, swaps


def rank(M: RMatrix) -> int:
    """Exact linear rank."""
    _, pivots, _ = _bareiss(_integer_rows(M.tolist()), M.cols)
    return len(pivots)


def row_basis(M: RMatrix) -> tuple[RMatrix, tuple[int, ...]]:
    """Echelon basis of the row space and its pivot columns."""
    echelon, pivots, _ = _bareiss(_integer_rows(M.tolist()), M.cols)
    return RMatrix(echelon[: len(pivots)], cols=M.cols), tuple(pivots)


def null_space(M: RMatrix) -> list[Vec]:
    """Basis of the right kernel, one primitive integer vector per free column."""
    echelon, pivots, _ = _bareiss(_integer_rows(M.tolist()), M.cols)
    pivot_set = set(pivots)
    basis = []
    for free in range(M.cols):
        if free in pivot_set:
            continue
        x = [Fraction(0)] * M.cols
        x[free] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = echelon[r]
            s = sum((row[j] * x[j] for j in range(pc + 1, M.cols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(primitive(x))
    return basis


def determinant(M: RMatrix) -> Fraction:
    if M.rows != M.cols:
        raise ValueError(f"determinant of non-square {M.shape} matrix")
    if M.rows == 0:
        return Fraction(1)
    grid = M.tolist()
    scales = [math.lcm(*(q.denominator for q in row)) for row in grid]
    echelon, pivots, swaps = _bareiss(_integer_rows(grid), M.cols)
    if len(pivots) < M.rows:
        return Fraction(0)
    det = Fraction(echelon[-1][-1], math.prod(scales))
    return -det if swaps % 2 else det


def inverse(M: RMatrix) -> RMatrix:
    """Gauss-Jordan inverse of a square matrix."""
    n = M.rows
    if n != M.cols:
        raise ValueError(f"inverse of non-square {M.shape} matrix")
    x = M.tolist()
    y = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        p = next((j for j in range(i, n) if x[j][i] != 0), None)
        if p is None:
            raise GeometryError("singular matrix")
        x[i], x[p] = x[p], x[i]
        y[i], y[p] = y[p], y[i]
        piv = x[i][i]
        x[i] = [v / piv for v in x[i]]
        y[i] = [v / piv for v in y[i]]
        for j in range(n):
            if j != i and x[j][i] != 0:
                f = x[j][i]
                x[j] = [a - f * b for a, b in zip(x[j], x[i])]
                y[j] = [a - f * b for a, b in zip(y[j], y[i])]
    return RMatrix(y, cols=n)


def solve(M: RMatrix, b: Sequence[Fraction]) -> Vec | None:
    """One solution of Mx = b, or None when the system is inconsistent."""
    augmented = RMatrix(
        [list(M.row(i)) + [-Fraction(b[i])] for i in range(M.rows)], cols=M.cols + 1
    )
    for v in null_space(augmented):
        t = v[-1]
        if t != 0:
            return tuple(x / t for x in v[:-1])
    return None


def affine_rank(points: Sequence[Sequence[Fraction]]) -> int:
    """Dimension of the affine hull; -1 for no points."""
    if not points:
        return -1
    base = points[0]
    diffs = [sub(p, base) for p in points[1:]]
    if not diffs:
        return 0
    return rank(RMatrix(diffs, cols=len(base)))


# --- Projective plane ---


def cross(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vec:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def normalize_homogeneous(v: Sequence[Fraction]) -> Vec:
    """Scale so the last coordinate is 1, or the first nonzero one for points at infinity."""
    if v[-1] != 0:
        pivot = v[-1]
    else:
        pivot = next((x for x in v if x != 0), None)
        if pivot is None:
            raise GeometryError("zero homogeneous vector")
    return tuple(Fraction(x) / pivot for x in v)


def proportional(u: Sequence[Fraction], v: Sequence[Fraction]) -> bool:
    """True when u and v are nonzero multiples of each other."""
    if len(u) != len(v) or not any(u) or not any(v):
        return False
    return all(u[i] * v[j] == u[j] * v[i] for i in range(len(u)) for j in range(i + 1, len(u)))


@dataclass(frozen=True, eq=False)
class HomLine:
    """The line ax + by + c = 0, equal to its nonzero multiples."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        if self.a == 0 and self.b == 0 and self.c == 0:
            raise GeometryError("degenerate line")

    @property
    def coefficients(self) -> Vec:
        return (Fraction(self.a), Fraction(self.b), Fraction(self.c))

    def contains(self, point: Sequence[Fraction]) -> bool:
        """Affine (x, y) or homogeneous (x, y, w); w = 0 is a point at infinity."""
        w = point[2] if len(point) == 3 else 1
        return self.a * point[0] + self.b * point[1] + self.c * w == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, HomLine):
            return NotImplemented
        return proportional(self.coefficients, other.coefficients)

    def __hash__(self) -> int:
        return hash(normalize_homogeneous(self.coefficients))


class Concurrency(NamedTuple):
    concurrent: bool
    point: Vec | None


def line_through(p: Sequence[Fraction], q: Sequence[Fraction]) -> HomLine:
    p, q = vec(p), vec(q)
    if p == q:
        raise GeometryError("degenerate line")
    a, b, c = cross((p[0], p[1], Fraction(1)), (q[0], q[1], Fraction(1)))
    return HomLine(a, b, c)


def concurrent(l1: HomLine, l2: HomLine, l3: HomLine) -> Concurrency:
    """Projective concurrency test; parallel lines meet at infinity."""
    if l1 == l2 or l1 == l3 or l2 == l3:
        raise GeometryError("degenerate pencil")
    det = determinant(RMatrix([l1.coefficients, l2.coefficients, l3.coefficients]))
    if det != 0:
        return Concurrency(False, None)
    return Concurrency(True, normalize_homogeneous(cross(l1.coefficients, l2.coefficients)))
