"""Pydantic models for polytope, family, certificate and result files."""

from __future__ import annotations

try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exactnum import GeometryError, format_rational, to_rational
from .polytope import PointConfig, Polytope, hull


# --- Rationals ---


def _rational_string(v: Any) -> str:
    """Canonical "p/q" text; raises RationalParseError naming the token."""
    return format_rational(to_rational(v))


# --- Polytope files ---


class PolytopeFile(BaseModel):
    model_config = ConfigDict(extra="ignore")

    dim: int = Field(ge=0)
    vertices: list[list[str]]
    labels: list[str] | None = None

    @field_validator("vertices", mode="before")
    @classmethod
    def coerce_rationals(cls, v):
        if not isinstance(v, list):
            raise ValueError("vertices must be a list of coordinate lists")
        return [[_rational_string(x) for x in row] for row in v]

    @model_validator(mode="after")
    def check_shape(self):
        if not self.vertices:
            raise ValueError("at least one vertex required")
        width = len(self.vertices[0])
        if any(len(row) != width for row in self.vertices):
            raise ValueError("vertices must all have the same length")
        if self.labels is not None and len(self.labels) != len(self.vertices):
            raise ValueError("one label per vertex required")
        return self

    def to_polytope(self) -> Polytope:
        """Hull of the listed points; facets and incidence are always recomputed."""
        config = PointConfig.of(
            [[to_rational(x) for x in row] for row in self.vertices], self.labels
        )
        P = hull(config)
        if P.dim != self.dim:
            raise GeometryError(f"declared dim {self.dim} but the vertices span {P.dim}")
        return P

    @classmethod
    def from_polytope(cls, P: Polytope) -> PolytopeFile:
        return cls(
            dim=P.dim,
            vertices=[[format_rational(x) for x in p] for p in P.points],
            labels=list(P.labels),
        )


# --- Families ---


class FamilyKind(StrEnum):
    SIMPLEX = "simplex"
    PYRAMID_PRODUCT = "kfold_pyramid_product"
    PYRAMID_SUM = "kfold_pyramid_sum"
    JOIN = "join_family"


class FamilySpec(BaseModel):
    """Parameters of a constructible family.

    For ``simplex`` the dimension is carried in ``n``.
    """

    model_config = ConfigDict(extra="ignore", frozen=True)

    kind: FamilyKind
    k: int = 0
    n: int = 1
    m: int = 1

    @model_validator(mode="after")
    def check_counts(self):
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.n < 1 or self.m < 1:
            raise ValueError("n and m must be at least 1")
        return self

    @property
    def dimension(self) -> int:
        if self.kind is FamilyKind.SIMPLEX:
            return self.n
        if self.kind is FamilyKind.JOIN:
            return self.k + self.n + self.m + 4
        return self.k + self.n + self.m


# --- Certificates and results ---


class ExtensionCertificateFile(BaseModel):
    model_config = ConfigDict(extra="ignore")

    Q: PolytopeFile
    keep: int = Field(ge=1)


class IntervalModel(BaseModel):
    lo: int
    hi: int


class XcReport(BaseModel):
    model_config = ConfigDict(extra="ignore")

    xc: int | IntervalModel
    case: str
    certificate: dict[str, Any] = {}

    @classmethod
    def from_result(cls, result) -> XcReport:
        from .classifier import Interval

        value = result.value
        xc = IntervalModel(lo=value.lo, hi=value.hi) if isinstance(value, Interval) else value
        certificate = dict(result.certificate)
        certificate["dualized"] = result.dualized
        if result.extension is not None:
            certificate["extension"] = ExtensionCertificateFile(
                Q=PolytopeFile.from_polytope(result.extension.Q),
                keep=result.extension.keep,
            ).model_dump()
        return cls(xc=xc, case=str(result.case), certificate=certificate)

    def extension(self) -> ExtensionCertificateFile | None:
        raw = self.certificate.get("extension")
        return ExtensionCertificateFile.model_validate(raw) if raw else None


class SporadicRecord(BaseModel):
    dim: int
    vertices: list[list[str]]
    facet_count: int
