"""Read/write polytope, certificate and result JSON files."""

import json
import logging
import tempfile
from pathlib import Path
from typing import Any

from .models import (
    ExtensionCertificateFile,
    FamilySpec,
    PolytopeFile,
    XcReport,
)
from .oracle import ExtensionCertificate
from .polytope import Polytope

log = logging.getLogger("fewxc")


def dumps(payload: Any) -> str:
    """Deterministic JSON text: fixed indent, insertion order, trailing newline."""
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def write_json(path: Path, payload: Any) -> Path:
    """Atomic write: temp file + rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    try:
        with open(fd, "w") as f:
            f.write(dumps(payload))
        Path(tmp).rename(path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    return path


def read_json(path: Path) -> Any:
    with open(path) as f:
        return json.load(f)


# --- Polytopes ---


def polytope_payload(P: Polytope) -> dict:
    return PolytopeFile.from_polytope(P).model_dump()


def load_polytope(path: Path) -> Polytope:
    """Load a Polytope JSON file; the hull is recomputed from the listed vertices."""
    return PolytopeFile.model_validate(read_json(path)).to_polytope()


def write_polytope(path: Path, P: Polytope) -> Path:
    return write_json(path, polytope_payload(P))


# --- Families, certificates, results ---


def load_family(path: Path) -> FamilySpec:
    return FamilySpec.model_validate(read_json(path))


def load_certificate(path: Path) -> ExtensionCertificate:
    """Read either a bare {"Q", "keep"} certificate or a classify result carrying one."""
    raw = read_json(path)
    if isinstance(raw, dict) and "case" in raw:
        cert = XcReport.model_validate(raw).extension()
        if cert is None:
            raise ValueError(f"{path} carries no extension certificate")
    else:
        cert = ExtensionCertificateFile.model_validate(raw)
    return ExtensionCertificate(cert.Q.to_polytope(), cert.keep)


def load_report(path: Path) -> XcReport:
    return XcReport.model_validate(read_json(path))


def write_corpus_manifest(out_dir: Path, entries: list[dict]) -> Path:
    """Index of a materialized corpus: one entry per written polytope."""
    manifest = {"count": len(entries), "members": entries}
    path = write_json(out_dir / "index.json", manifest)
    log.info("Wrote %d corpus members to %s", len(entries), out_dir)
    return path
