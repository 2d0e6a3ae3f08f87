"""Run reports: a JSON schema, validation, rendering, and witness re-checks.

Reports are deterministic for a fixed scenario, parameters and seed; the only
non-reproducible data (timestamp, elapsed time) lives under "meta", which
comparisons exclude.
"""

import json
from datetime import datetime, timezone

import jsonschema

from . import linalg
from .fields import QuadraticEtale, ground_field

SCHEMA_VERSION = 1

REPORT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "g2real run report",
    "type": "object",
    "required": ["schema_version", "scenario", "params", "seed", "verdicts", "meta"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "scenario": {"type": "string"},
        "params": {"type": "object"},
        "seed": {"type": ["integer", "null"]},
        "verdicts": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "status"],
                "properties": {
                    "name": {"type": "string"},
                    "status": {
                        "enum": ["pass", "fail", "real", "not_real", "unknown"]
                    },
                    "detail": {},
                },
                "additionalProperties": True,
            },
        },
        "witnesses": {"type": "array"},
        "obstruction": {"type": ["object", "null"]},
        "oracle_agreement": {"type": ["boolean", "null"]},
        "meta": {
            "type": "object",
            "properties": {
                "timestamp": {"type": "string"},
                "elapsed_s": {"type": "number"},
                "version": {"type": "string"},
            },
        },
    },
}


def new_report(scenario, params, seed):
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario,
        "params": dict(params),
        "seed": seed,
        "verdicts": [],
        "witnesses": [],
        "obstruction": None,
        "oracle_agreement": None,
        "meta": {},
    }


def finalize(report, elapsed):
    from . import __version__

    report["meta"] = {
        "timestamp": datetime.now(timezone.utc).isoformat(),
        "elapsed_s": round(elapsed, 6),
        "version": __version__,
    }
    validate_report(report)
    return report


def validate_report(report):
    jsonschema.validate(report, REPORT_SCHEMA)


def dump_report(report, path=None):
    text = json.dumps(report, indent=2, sort_keys=True)
    if path:
        import os
        import tempfile

        d = os.path.dirname(os.path.abspath(path))
        fd, tmp = tempfile.mkstemp(dir=d, suffix=".tmp")
        with open(fd, "w") as fh:
            fh.write(text + "\n")
        import shutil

        shutil.move(tmp, path)
    return text


def comparable_body(report):
    """The report without its meta block (the only nondeterministic part)."""
    out = {k: v for k, v in report.items() if k != "meta"}
    return json.dumps(out, indent=2, sort_keys=True)


def render(report):
    lines = []
    lines.append(f"scenario: {report['scenario']}")
    params = " ".join(f"{k}={v}" for k, v in sorted(report["params"].items()))
    lines.append(f"params:   {params}")
    lines.append(f"seed:     {report['seed']}")
    width = max((len(v["name"]) for v in report["verdicts"]), default=4)
    lines.append("-" * (width + 12))
    unknowns = 0
    for v in report["verdicts"]:
        status = v["status"]
        if status == "unknown":
            unknowns += 1
        detail = v.get("detail")
        suffix = f"  {detail}" if detail not in (None, "") else ""
        lines.append(f"{v['name']:<{width}}  {status}{suffix}")
    if report.get("obstruction"):
        lines.append(f"obstruction: {report['obstruction']}")
    if report.get("oracle_agreement") is not None:
        lines.append(f"oracle agreement: {report['oracle_agreement']}")
    if unknowns:
        lines.append(
            f"note: {unknowns} verdict(s) unknown (budget exhausted); rerun with a "
            "larger --budget or --exhaustive"
        )
    meta = report.get("meta", {})
    if meta:
        lines.append(f"elapsed: {meta.get('elapsed_s')} s")
    return "\n".join(lines)


# -- witness re-verification -----------------------------------------------------

def _field_of(spec):
    return ground_field(spec)


def _parse_mat(F, rows):
    return linalg.mat([[F.from_text(x) for x in row] for row in rows])


def _parse_mat_L(L, rows):
    return linalg.mat([[L.from_text(x) for x in row] for row in rows])


def verify_witnesses(report):
    """Re-verify every self-contained matrix witness in a report; returns the
    number checked.  Raises on any failure."""
    checked = 0
    for w in report.get("witnesses", []):
        kind = w.get("kind")
        if kind == "symmetric_pair":
            F = _field_of(w["field"])
            A = _parse_mat(F, w["A"])
            S1 = _parse_mat(F, w["S1"])
            S2 = _parse_mat(F, w["S2"])
            assert linalg.mat_eq(F, S1, linalg.transpose(S1))
            assert linalg.mat_eq(F, S2, linalg.transpose(S2))
            assert F.eq(linalg.det3(F, S1), F.one)
            assert F.eq(linalg.det3(F, S2), F.one)
            assert linalg.mat_eq(F, linalg.mat_mul(F, S1, S2), A)
            checked += 1
        elif kind == "unitary_pair":
            k = _field_of(w["field"])
            L = QuadraticEtale(k, w["c"])
            H = tuple(k.from_text(x) for x in w["H"])
            A = _parse_mat_L(L, w["A"])
            A1 = _parse_mat_L(L, w["A1"])
            A2 = _parse_mat_L(L, w["A2"])
            from .automorphisms import in_su

            I = linalg.identity(L, 3)
            for Ai in (A1, A2):
                assert in_su(Ai, L, H)
                prod = linalg.mat_mul(L, linalg.map_entries(L.sigma, Ai), Ai)
                assert linalg.mat_eq(L, prod, I)
            assert linalg.mat_eq(L, linalg.mat_mul(L, A1, A2), A)
            checked += 1
        elif kind == "conjugator_matrix":
            F = _field_of(w["field"])
            A = _parse_mat(F, w["A"])
            B = _parse_mat(F, w["B"])
            Ainv = linalg.inverse3(F, A)
            if w["coset"] == 0:
                lhs = linalg.mat_mul(F, B, A)
                rhs = linalg.mat_mul(F, Ainv, B)
            else:
                lhs = linalg.mat_mul(F, B, linalg.transpose(A))
                rhs = linalg.mat_mul(F, A, B)
            assert linalg.mat_eq(F, lhs, rhs)
            assert F.eq(linalg.det3(F, B), F.one)
            checked += 1
    return checked


def mat_text(F, m):
    return [[F.to_text(x) for x in row] for row in m]


def mat3_text(F, m):
    """The compact row encoding "r1;r2;r3" with comma-separated entries."""
    return ";".join(",".join(F.to_text(x) for x in row) for row in m)


def parse_mat3(F, s):
    rows = []
    for part in s.split(";"):
        rows.append(tuple(F.from_text(x) for x in part.split(",")))
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise ValueError("expected three rows of three entries")
    return linalg.mat(rows)
