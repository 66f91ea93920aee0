"""fewxc command line: classify, construct and cross-check small polytopes.

Usage:
    python -m src.cli classify prism.json
    python -m src.cli construct family.json --out polytope.json
    python -m src.cli gale polytope.json
    python -m src.cli enumerate-sporadic --max-dim 7
    python -m src.cli bounds --d 2 --n 9
    python -m src.cli slack polytope.json
    python -m src.cli verify polytope.json certificate.json
    python -m src.cli corpus --out data/corpus

Every subcommand prints one JSON document on stdout. Exit codes: 0 exact,
1 failed verification, 2 interval or infeasible geometry, 3 input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from pydantic import ValidationError

from . import config
from .bounds import bound_record
from .classifier import check_certificate, classify_xc
from .constructors import build_family
from .corpus import build_corpus, materialize
from .exactnum import GeometryError, RationalParseError, format_rational
from .gale import faces_from_gale, gale_transform, is_polytopal, sporadic_d4_vertices
from .manifest import (
    dumps,
    load_certificate,
    load_family,
    load_polytope,
    polytope_payload,
    read_json,
    write_polytope,
)
from .models import PolytopeFile, SporadicRecord, XcReport
from .oracle import CoverLimitError, rectangle_cover_bound, slack_matrix, verify_extension
from .polytope import polar_dual, to_full_dimensional

log = config.setup_logging()

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INEXACT = 2
EXIT_INPUT = 3


def _emit(payload) -> None:
    sys.stdout.write(dumps(payload))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def run_classify(args: argparse.Namespace) -> int:
    P = load_polytope(args.polytope)
    result = classify_xc(P)
    log.info("%s: d=%d n=%d m=%d -> %s", args.polytope.name, P.dim,
             P.n_vertices, P.n_facets, result.case)
    if args.check and result.exact and not check_certificate(P, result):
        log.error("certificate did not re-verify")
        return EXIT_REJECTED
    _emit(XcReport.from_result(result).model_dump())
    return EXIT_OK if result.exact else EXIT_INEXACT


def run_construct(args: argparse.Namespace) -> int:
    spec = load_family(args.family)
    P = build_family(spec)
    if args.out:
        write_polytope(args.out, P)
        log.info("Wrote %s (d=%d, %d vertices)", args.out, P.dim, P.n_vertices)
    _emit(polytope_payload(P))
    return EXIT_OK


def run_gale(args: argparse.Namespace) -> int:
    P = load_polytope(args.polytope)
    G = gale_transform(P.vertices)
    payload = {
        "corank": G.corank,
        "labels": list(G.labels),
        "vectors": [[format_rational(x) for x in v] for v in G.vectors],
        "polytopal": is_polytopal(G),
    }
    if payload["polytopal"]:
        payload["facets"] = [
            [label for label, on in zip(G.labels, row) if on] for row in faces_from_gale(G)
        ]
    _emit(payload)
    return EXIT_OK


def run_enumerate(args: argparse.Namespace) -> int:
    found = sporadic_d4_vertices(args.max_dim)
    records = [
        SporadicRecord(
            dim=d,
            vertices=PolytopeFile.from_polytope(P).vertices,
            facet_count=P.n_facets,
        ).model_dump()
        for d, P in found
    ]
    per_dim = Counter(d for d, _ in found)
    log.info("count per dimension: %s",
             ", ".join(f"{d}: {per_dim.get(d, 0)}" for d in range(3, args.max_dim + 1)))
    _emit(records)
    return EXIT_OK


def run_bounds(args: argparse.Namespace) -> int:
    _emit(bound_record(args.d, n=args.n, r=args.r, alpha=args.alpha))
    return EXIT_OK


def run_slack(args: argparse.Namespace) -> int:
    P = load_polytope(args.polytope)
    S = slack_matrix(P)
    _emit([[format_rational(x) for x in row] for row in S.tolist()])
    if args.cover:
        try:
            log.info("rectangle cover bound: %d", rectangle_cover_bound(S))
        except CoverLimitError as exc:
            log.warning("rectangle cover bound skipped: %s", exc)
    return EXIT_OK


def run_verify(args: argparse.Namespace) -> int:
    P = to_full_dimensional(load_polytope(args.polytope))
    cert = load_certificate(args.certificate)
    raw = read_json(args.certificate)
    if isinstance(raw, dict) and raw.get("certificate", {}).get("dualized"):
        P = polar_dual(P)
    verdict = verify_extension(P, cert)
    _emit({"ok": verdict.ok, "facet_count": verdict.facet_count})
    return EXIT_OK if verdict.ok else EXIT_REJECTED


def run_corpus(args: argparse.Namespace) -> int:
    members = build_corpus(seed=args.seed, max_dim=args.max_dim, sporadic=not args.no_sporadic)
    index = materialize(args.out, members)
    _emit(read_json(index))
    return EXIT_OK


COMMANDS = {
    "classify": run_classify,
    "construct": run_construct,
    "gale": run_gale,
    "enumerate-sporadic": run_enumerate,
    "bounds": run_bounds,
    "slack": run_slack,
    "verify": run_verify,
    "corpus": run_corpus,
}


# ===========================================================================
# CLI
# ===========================================================================


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Extension complexity of d-polytopes with few vertices or facets"
    )
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    classify = subparsers.add_parser("classify", help="Classify a polytope file")
    classify.add_argument("polytope", type=Path)
    classify.add_argument("--check", action="store_true",
                          help="Re-verify the certificate before printing")

    construct = subparsers.add_parser("construct", help="Build a family member from a FamilySpec")
    construct.add_argument("family", type=Path)
    construct.add_argument("--out", type=Path, help="Also write the polytope to this file")

    gale = subparsers.add_parser("gale", help="Gale transform and the faces read from it")
    gale.add_argument("polytope", type=Path)

    enum = subparsers.add_parser("enumerate-sporadic",
                                 help="Non-pyramidal d-polytopes with d+4 vertices and d+3 facets")
    enum.add_argument("--max-dim", type=int, default=7,
                      help="Largest dimension searched (default: 7)")

    bounds = subparsers.add_parser("bounds", help="Closed-form bounds")
    bounds.add_argument("--d", type=int, required=True)
    bounds.add_argument("--n", type=int, help="Vertex count (simple/simplicial bound)")
    bounds.add_argument("--r", type=int, help="Realization space dimension")
    bounds.add_argument("--alpha", type=int)

    slack = subparsers.add_parser("slack", help="Slack matrix as rational strings")
    slack.add_argument("polytope", type=Path)
    slack.add_argument("--cover", action="store_true",
                       help="Log the rectangle covering bound")

    verify = subparsers.add_parser("verify", help="Check an extension certificate")
    verify.add_argument("polytope", type=Path)
    verify.add_argument("certificate", type=Path,
                        help="Classify output or a bare {Q, keep} file")

    corpus = subparsers.add_parser("corpus", help="Write the test corpus to a directory")
    corpus.add_argument("--out", type=Path, default=config.CORPUS_DIR)
    corpus.add_argument("--seed", type=int, default=None)
    corpus.add_argument("--max-dim", type=int, default=8)
    corpus.add_argument("--no-sporadic", action="store_true",
                        help="Skip the sporadic enumeration")
    return parser


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)

    errors = config.validate_config()
    if errors:
        for err in errors:
            log.error("CONFIG: %s", err)
        return EXIT_INPUT

    try:
        return COMMANDS[args.command](args)
    except (RationalParseError, ValidationError, json.JSONDecodeError, OSError) as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    except GeometryError as exc:
        log.error("infeasible: %s", exc)
        return EXIT_INEXACT
    except ValueError as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
