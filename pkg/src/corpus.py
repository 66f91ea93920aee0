"""Named test corpus covering every branch of the classification."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import config
from .constructors import (
    cyclic,
    desarguian_hexagon,
    direct_sum,
    join_family,
    lawrence_extension,
    one_point_suspension,
    perturb_vertex,
    product,
    pyramid,
    pyramid_product,
    pyramid_sum,
    random_desarguian_hexagon,
    simplex,
)
from .exactnum import centroid
from .gale import sporadic_d4_vertices
from .manifest import write_corpus_manifest, write_polytope
from .polytope import PointConfig, Polytope, hull, polar_dual

log = logging.getLogger("fewxc")

REGULAR_HEXAGON = ((2, 0), (1, 2), (-1, 2), (-2, 0), (-1, -2), (1, -2))
SHADOW_HEXAGON = ((0, 0), (2, -1), (4, 0), (3, 2), (1, 2), (0, 1))
GENERIC_HEXAGON = ((0, 0), (3, 0), (5, 2), (4, 5), (1, 5), (-1, 3))


@dataclass(frozen=True)
class CorpusMember:
    name: str
    family: str
    polytope: Polytope

    @property
    def dim(self) -> int:
        return self.polytope.dim


def polygon(points) -> Polytope:
    return hull(PointConfig.of(points))


def regular_hexagon() -> Polytope:
    return polygon(REGULAR_HEXAGON)


def _recipes(rng: random.Random) -> list[tuple[str, str, int, Callable[[], Polytope]]]:
    """(name, family, dimension, builder)."""
    prism = lambda: product(simplex(1), simplex(2))  # noqa: E731
    recipes: list[tuple[str, str, int, Callable[[], Polytope]]] = []
    add = recipes.append

    for d in range(1, 6):
        add((f"simplex_{d}", "simplex", d, lambda d=d: simplex(d)))
    for k, n, m in [(0, 1, 1), (0, 1, 2), (0, 1, 3), (0, 2, 2), (1, 1, 2), (2, 1, 3), (0, 2, 3)]:
        add((f"pyr{k}_prod_{n}_{m}", "kfold_pyramid_product", k + n + m,
             lambda k=k, n=n, m=m: pyramid_product(k, n, m)))
    for k, n, m in [(0, 1, 2), (0, 2, 2), (1, 1, 1), (1, 1, 2), (0, 1, 3), (2, 1, 1)]:
        add((f"pyr{k}_sum_{n}_{m}", "kfold_pyramid_sum", k + n + m,
             lambda k=k, n=n, m=m: pyramid_sum(k, n, m)))
    for k, n, m in [(0, 1, 1), (1, 1, 1), (0, 1, 2)]:
        add((f"join_{k}_{n}_{m}", "join_family", k + n + m + 4,
             lambda k=k, n=n, m=m: join_family(k, n, m)))

    add(("cube", "product", 3, lambda: product(product(simplex(1), simplex(1)), simplex(1))))
    add(("octahedron", "direct_sum", 3,
         lambda: direct_sum(direct_sum(simplex(1), simplex(1)), simplex(1))))
    add(("pentagon", "polygon", 2, lambda: polygon([(0, 0), (2, 0), (3, 2), (1, 3), (-1, 2)])))
    add(("regular_hexagon", "hexagon", 2, regular_hexagon))
    add(("shadow_hexagon", "hexagon", 2, lambda: polygon(SHADOW_HEXAGON)))
    add(("generic_hexagon", "hexagon", 2, lambda: polygon(GENERIC_HEXAGON)))
    add(("pyr1_generic_hexagon", "hexagon", 3, lambda: pyramid(polygon(GENERIC_HEXAGON), 1)))
    add(("pyr1_regular_hexagon", "hexagon", 3, lambda: pyramid(regular_hexagon(), 1)))
    add(("pyr2_shadow_hexagon", "hexagon", 4, lambda: pyramid(polygon(SHADOW_HEXAGON), 2)))
    add(("finite_center_hexagon", "hexagon", 2, lambda: desarguian_hexagon(
        (0, 0, 1), ((1, 0), (1, 1), (0, 1)), (3, 1, Fraction(1, 3), 3, 1, 3))))
    for i in range(3):
        H = random_desarguian_hexagon(rng)
        add((f"random_desarguian_{i}", "hexagon", 2, lambda H=H: H))
        add((f"perturbed_desarguian_{i}", "hexagon", 2,
             lambda H=H: perturb_vertex(H, 0, (0, Fraction(1, 1000)))))
        add((f"pyr1_random_desarguian_{i}", "hexagon", 3, lambda H=H: pyramid(H, 1)))

    for d, extra in [(2, 1), (2, 2), (3, 2), (3, 3), (3, 4), (4, 3), (4, 4), (5, 4), (6, 4)]:
        add((f"cyclic_{d}_{d + extra}", "cyclic", d, lambda d=d, extra=extra: cyclic(d, d + extra)))
    add(("heptagon", "polygon", 2, lambda: cyclic(2, 7)))

    add(("suspension_prism", "chain", 4,
         lambda: one_point_suspension(prism(), centroid(prism().points))))
    add(("lawrence_prism", "chain", 4,
         lambda: lawrence_extension(prism(), (2, Fraction(1, 5), Fraction(1, 7)))))
    add(("lawrence_pyr1_prism", "chain", 5,
         lambda: lawrence_extension(pyramid(prism(), 1), (2, Fraction(1, 5), Fraction(1, 7), 0))))
    add(("suspension_lawrence_prism", "chain", 5, lambda: one_point_suspension(
        lawrence_extension(prism(), (2, Fraction(1, 5), Fraction(1, 7))),
        (Fraction(1, 2), Fraction(1, 5), Fraction(1, 5), Fraction(1, 2)))))

    add(("polar_cyclic_4_8", "polar", 4, lambda: polar_dual(cyclic(4, 8))))
    add(("polar_prism", "polar", 3, lambda: polar_dual(prism())))
    return recipes


def build_corpus(
    seed: int | None = None, max_dim: int = 8, sporadic: bool = True
) -> list[CorpusMember]:
    """Every recipe up to ``max_dim``, plus the sporadic d+4-vertex polytopes."""
    rng = random.Random(config.SEED if seed is None else seed)
    members = []
    for name, family, dim, build in _recipes(rng):
        if dim <= max_dim:
            members.append(CorpusMember(name, family, build()))
    if sporadic:
        for i, (d, P) in enumerate(sporadic_d4_vertices(min(7, max_dim))):
            members.append(CorpusMember(f"sporadic_{i}_dim{d}", "sporadic", P))
    log.info("Built corpus of %d polytopes", len(members))
    return members


def materialize(out_dir: Path, members: list[CorpusMember] | None = None) -> Path:
    """One Polytope JSON per member plus index.json."""
    if members is None:
        members = build_corpus()
    entries = []
    for member in members:
        P = member.polytope
        path = write_polytope(out_dir / f"{member.name}.json", P)
        entries.append({
            "name": member.name,
            "family": member.family,
            "file": path.name,
            "dim": P.dim,
            "vertices": P.n_vertices,
            "facets": P.n_facets,
        })
    return write_corpus_manifest(out_dir, entries)
