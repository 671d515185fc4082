"""Construct -> verify orchestration, artifact files and the claim catalog.

Artifacts are plain JSON with sorted keys and integer field elements, so two
identical runs write byte-identical files.  The catalog is an append-only
JSON-lines file; timestamps live there and nowhere else.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from pathlib import Path

from . import grs
from .families import (
    FAMILIES,
    Claim,
    canonical_field,
    enumerate_claims,
    evaluate_claim,
    nonexistence_gate,
)
from .field import Field, FieldError


class MalformedArtifact(ValueError):
    pass


# -- artifacts


def artifact_to_dict(art: grs.CodeArtifact, report: grs.VerificationReport | None = None) -> dict:
    F = art.field
    out = {
        "field": F.descriptor(),
        "kind": art.kind,
        "n": art.length,
        "k": art.k,
        "evaluation_set": list(art.points),
        "weights": list(art.weights),
        "matrix": [list(r) for r in art.matrix],
    }
    if report is not None:
        out["verification"] = report.to_dict()
    if art.provenance:
        out["provenance"] = art.provenance
    return out


def dumps_artifact(art: grs.CodeArtifact, report: grs.VerificationReport | None = None) -> str:
    return json.dumps(artifact_to_dict(art, report), sort_keys=True, separators=(",", ":")) + "\n"


def write_artifact(path, art: grs.CodeArtifact, report: grs.VerificationReport | None = None) -> Path:
    path = Path(path)
    if path.parent and not path.parent.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_artifact(art, report))
    return path


def _int_list(obj, what: str) -> list[int]:
    if not isinstance(obj, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in obj):
        raise MalformedArtifact(f"{what} must be a list of integers")
    return obj


def artifact_from_dict(data: dict) -> grs.CodeArtifact:
    """Rebuild a CodeArtifact; the stored verification block is ignored."""
    try:
        fd = data["field"]
        F = Field(int(fd["p"]), int(fd["m"]), fd["modulus"], int(fd["generator"]))
        kind = data["kind"]
        points = _int_list(data["evaluation_set"], "evaluation_set")
        weights = _int_list(data["weights"], "weights")
        matrix = data["matrix"]
    except KeyError as exc:
        raise MalformedArtifact(f"missing key {exc}") from None
    except (FieldError, TypeError) as exc:
        raise MalformedArtifact(f"field reconstruction failed: {exc}") from None
    if kind not in ("grs", "egrs"):
        raise MalformedArtifact(f"unknown kind {kind!r}")
    if any(w == 0 for w in weights):
        raise MalformedArtifact("weights must be nonzero")
    if len(weights) != len(points):
        raise MalformedArtifact("weights and evaluation set differ in length")
    if len(set(points)) != len(points):
        raise MalformedArtifact("evaluation set has duplicates")
    if not isinstance(matrix, list) or not matrix:
        raise MalformedArtifact("matrix must be a non-empty list of rows")
    rows = [_int_list(r, "matrix row") for r in matrix]
    width = len(points) + (1 if kind == "egrs" else 0)
    if any(len(r) != width for r in rows):
        raise MalformedArtifact(f"matrix rows must have length {width}")
    for x in [*points, *weights, *(x for r in rows for x in r)]:
        if not 0 <= x < F.q:
            raise MalformedArtifact(f"{x} is not an element of GF({F.q})")
    if data.get("n") not in (None, width) or data.get("k") not in (None, len(rows)):
        raise MalformedArtifact("stated n or k disagrees with the matrix")
    return grs.CodeArtifact(F, kind, tuple(points), tuple(weights), tuple(tuple(r) for r in rows), data.get("provenance"))


def load_artifact(path) -> grs.CodeArtifact:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedArtifact(f"not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise MalformedArtifact("artifact must be a JSON object")
    return artifact_from_dict(data)


def verify_file(path) -> grs.VerificationReport:
    return grs.verify(load_artifact(path))


# -- running claims


@dataclass
class Outcome:
    claim_dict: dict
    status: str  # passed | failed | blocked
    artifact: dict | None = None
    report: dict | None = None
    witness: tuple | None = None
    artifact_path: str | None = dc_field(default=None)


def run_claim(claim: Claim) -> Outcome:
    """Character criterion, then weights, matrix and full verification."""
    if nonexistence_gate(claim.q, claim.n) == "blocked":  # pragma: no cover - constructors refuse these
        return Outcome(claim.to_dict(), "blocked")
    evaluated = evaluate_claim(claim)
    if evaluated.status == "failed":
        return Outcome(evaluated.to_dict(), "failed", witness=evaluated.failure_witness)
    provenance = {"family": claim.family, "params": claim.params, "sigma_kind": claim.sigma_kind}
    art, report = grs.build_code(claim.field, claim.points, claim.code_kind, provenance)
    return Outcome(evaluated.to_dict(), "passed", artifact_to_dict(art, report), report.to_dict())


def _run_claim_job(payload: tuple) -> Outcome:
    # workers rebuild the field from q so only small tuples cross processes
    q, n, kind, family, params, points = payload
    return run_claim(Claim(canonical_field(q), n, kind, family, params, points))


def run_claims(claims, jobs: int = 1) -> list[Outcome]:
    """Results come back in input order whatever the number of workers."""
    claims = list(claims)
    if jobs <= 1 or len(claims) < 2:
        return [run_claim(c) for c in claims]
    payloads = [(c.q, c.n, c.sigma_kind, c.family, c.params, c.points) for c in claims]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_claim_job, payloads))


# -- catalog


def params_digest(q: int, n: int, sigma_kind: str, family: str, params: dict) -> str:
    blob = json.dumps(
        {"q": q, "n": n, "sigma_kind": sigma_kind, "family": family, "params": params},
        sort_keys=True,
        separators=(",", ":"),
    )
    return hashlib.sha256(blob.encode()).hexdigest()


class Catalog:
    """Append-only JSON-lines record of claim outcomes, one per key."""

    def __init__(self, path):
        self.path = Path(path)

    def records(self) -> list[dict]:
        if not self.path.exists():
            return []
        with self.path.open() as fh:
            return [json.loads(line) for line in fh if line.strip()]

    @staticmethod
    def key(rec: dict) -> tuple:
        return (rec["q"], rec["n"], rec["sigma_kind"], rec["family"], rec["params_digest"])

    def append(self, entries) -> int:
        """Append entries whose key is new; returns how many were written."""
        known = {self.key(r) for r in self.records()}
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        fresh = []
        for e in entries:
            if self.key(e) in known:
                continue
            known.add(self.key(e))
            fresh.append({"timestamp": stamp, **e})
        if fresh:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a") as fh:
                for rec in fresh:
                    fh.write(json.dumps(rec, sort_keys=True) + "\n")
        return len(fresh)


def catalog_entry(outcome: Outcome) -> dict:
    c = outcome.claim_dict
    entry = {
        "q": c["q"],
        "n": c["n"],
        "sigma_kind": c["sigma_kind"],
        "family": c["family"],
        "params_digest": params_digest(c["q"], c["n"], c["sigma_kind"], c["family"], c["params"]),
        "status": outcome.status,
    }
    if outcome.artifact_path:
        entry["artifact_path"] = outcome.artifact_path
    return entry


# -- tables

MARKS = {"passed": "+", "failed": "x", "blocked": "#"}


@dataclass
class TableResult:
    q: int
    n_max: int
    outcomes: list
    blocked: list
    text: str = ""

    def counts(self) -> dict:
        out = {"passed": 0, "failed": 0, "blocked": len(self.blocked)}
        for o in self.outcomes:
            out[o.status] += 1
        return out


def artifact_filename(claim_dict: dict) -> str:
    return f"q{claim_dict['q']}_n{claim_dict['n']}_{claim_dict['sigma_kind']}_{claim_dict['family']}.json"


def run_table(q: int, n_max: int, *, out_dir=None, catalog: Catalog | None = None, jobs: int = 1) -> TableResult:
    if n_max < 2:
        raise ValueError("max length must be at least 2")
    canonical_field(q)  # validates q
    claims = enumerate_claims(q, n_max)
    outcomes = run_claims(claims, jobs)
    blocked = [n for n in range(2, n_max + 1, 2) if nonexistence_gate(q, n) == "blocked"]
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for o in outcomes:
            if o.artifact is not None:
                path = out_dir / artifact_filename(o.claim_dict)
                path.write_text(json.dumps(o.artifact, sort_keys=True, separators=(",", ":")) + "\n")
                o.artifact_path = str(path)
    if catalog is not None:
        entries = [catalog_entry(o) for o in outcomes]
        for n in blocked:
            for kind in ("g", "eg"):
                entries.append(
                    {
                        "q": q,
                        "n": n,
                        "sigma_kind": kind,
                        "family": "nonexistence_gate",
                        "params_digest": params_digest(q, n, kind, "nonexistence_gate", {}),
                        "status": "blocked",
                    }
                )
        catalog.append(entries)
    result = TableResult(q, n_max, outcomes, blocked)
    result.text = render_table(result)
    return result


def render_table(result: TableResult) -> str:
    """Rows are lengths, columns families; each cell lists kinds with marks.

    '+' passed, 'x' failed (condition), '#' blocked by nonexistence, '.' no claim.
    """
    cells: dict[tuple, list[str]] = {}
    for o in result.outcomes:
        c = o.claim_dict
        cells.setdefault((c["n"], c["family"]), []).append(f"{c['sigma_kind']}{MARKS[o.status]}")
    used = [f for f in FAMILIES if any(fam == f for _, fam in cells)]
    header = ["n"] + used
    rows = []
    for n in range(2, result.n_max + 1, 2):
        if n in result.blocked:
            rows.append([str(n)] + ["#"] * len(used) + (["#"] if not used else []))
            continue
        rows.append([str(n)] + [",".join(cells.get((n, f), [])) or "." for f in used] + ([] if used else ["."]))
    if not used:
        header.append("families")
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = [f"GF({result.q}), even lengths up to {result.n_max}"]
    lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)))
    for r in rows:
        lines.append("  ".join(x.ljust(w) for x, w in zip(r, widths)))
    counts = result.counts()
    lines.append(f"summary: {counts['passed']} passed, {counts['failed']} failed, {counts['blocked']} blocked")
    return "\n".join(line.rstrip() for line in lines)


def default_jobs() -> int:
    return max(1, (os.cpu_count() or 1))
