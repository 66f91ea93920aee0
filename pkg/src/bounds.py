"""Closed-form bounds for generic polytopes and the counting formulas.

Square roots are never taken in floating point: every comparison against an
integer is squared first.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt
from typing import NamedTuple


class LowerBound(NamedTuple):
    """Ceiling of 2*sqrt(r - d) - d + 1 and whether the root is exact."""

    value: int
    exact: bool


def _ceil_sqrt(x: int) -> tuple[int, bool]:
    s = isqrt(x)
    if s * s == x:
        return s, True
    return s + 1, False


def generic_xc_lower(r: int, d: int) -> LowerBound:
    """Smallest integer t with t >= 2*sqrt(r - d) - d + 1."""
    if r <= d:
        raise ValueError(f"need r > d, got r={r}, d={d}")
    # 2*sqrt(x) = sqrt(4x)
    s, exact = _ceil_sqrt(4 * (r - d))
    return LowerBound(s - d + 1, exact)


def simple_or_simplicial_lower(d: int, n: int) -> int:
    if n < d + 1:
        raise ValueError(f"a {d}-polytope needs at least {d + 1} vertices")
    return generic_xc_lower(d * n, d).value


def polygon_lower(n: int) -> int:
    """Ceiling of 2*sqrt(2n - 2) - 1 for generic n-gons."""
    return simple_or_simplicial_lower(2, n)


def realization_dim_upper(N: int, D: int, d: int) -> int:
    """Dimension bound DN - (D+1)(D-d) for polytopes with an N-facet D-dimensional lift."""
    if D < d or N < D + 1:
        raise ValueError(f"need D >= d and N >= D+1, got N={N}, D={D}, d={d}")
    return D * N - (D + 1) * (D - d)


def min_facets_needed(D: int, d: int, r: int) -> Fraction:
    """((D+1)(D-d) + r) / D."""
    if D < d or d < 1:
        raise ValueError(f"need D >= d >= 1, got D={D}, d={d}")
    return Fraction((D + 1) * (D - d) + r, D)


def alpha_threshold(alpha: int) -> int:
    """Smallest d with d > ((alpha - 1) / 2)^2."""
    if alpha < 1:
        raise ValueError("alpha must be at least 1")
    return (alpha - 1) ** 2 // 4 + 1


def join_family_count(d: int) -> int:
    """Types pyr_k((Δ1×Δ2) ⋆ (Δn ⊕ Δm)) with k + n + m = d - 4."""
    if d < 4:
        return 0
    return (d - 4) ** 2 // 4


def pyramid_dim_bound(x: int, y: int) -> int:
    if x < 0 or y < 0:
        raise ValueError("arguments must be non-negative")
    if x == 0 or y == 0:
        return 0
    if x <= 5:
        return 3 * x + y - 2
    return comb(x, 2) + y + 3


def non_pyramidal_dim_guard(alpha: int, beta: int) -> int:
    """min(F(alpha, beta), F(beta, alpha))."""
    return min(pyramid_dim_bound(alpha, beta), pyramid_dim_bound(beta, alpha))


def chain_type_upper_shape(d: int) -> int:
    """Triples (lawrence, suspension, pyramid) summing to d - 3."""
    if d < 3:
        return 0
    return comb(d - 1, 2)


def d_plus_3_count_upper(d: int, sporadic: int = 9) -> dict:
    """Symbolic bound on d+4-vertex types with xc = d+3: joins + C*chains + sporadics."""
    return {
        "joins": join_family_count(d),
        "chain_shape": chain_type_upper_shape(d),
        "chain_constant": "C",
        "sporadic_at_most": sporadic,
        "formula": f"{join_family_count(d)} + C*{chain_type_upper_shape(d)} + {sporadic}",
    }


def bound_record(
    d: int, n: int | None = None, r: int | None = None, alpha: int | None = None
) -> dict:
    """Every bound that applies to the given parameters."""
    record: dict = {"d": d}
    if n is not None:
        record["n"] = n
        record["generic_lower"] = simple_or_simplicial_lower(d, n)
        record["alpha"] = n - d - 1
        record["upper"] = n
    if r is not None:
        bound = generic_xc_lower(r, d)
        record["r"] = r
        record["realization_lower"] = bound.value
        record["realization_lower_exact"] = bound.exact
    if alpha is None and n is not None and n - d - 1 >= 1:
        alpha = n - d - 1
    if alpha is not None:
        record["alpha"] = alpha
        record["alpha_threshold"] = alpha_threshold(alpha)
        record["alpha_attained"] = d >= alpha_threshold(alpha)
    if d >= 4:
        record["join_family_count"] = join_family_count(d)
        record["chain_type_shape"] = chain_type_upper_shape(d)
    return record
