"""File formats: polytope input files and JSONL classification results.

Rationals are serialized as "p/q" strings, never as decimals, so parsing a
serialized file reproduces the exact object.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .linalg import format_rational, norm_scalar, parse_rational
from .polytope import Polytope

RESULT_SCHEMA = "finepoly-classification"
RESULT_VERSION = 1


class PolytopeFileError(ValueError):
    pass


def parse_polytope_text(text):
    """Polytope from a JSON document with fields `dim` and `vertices`."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PolytopeFileError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "dim" not in doc or "vertices" not in doc:
        raise PolytopeFileError("polytope file needs 'dim' and 'vertices' fields")
    dim = doc["dim"]
    if not isinstance(dim, int):
        raise PolytopeFileError("'dim' must be an integer")
    rows = doc["vertices"]
    if not isinstance(rows, list) or not rows:
        raise PolytopeFileError("'vertices' must be a nonempty list")
    verts = []
    for row in rows:
        if not isinstance(row, list) or len(row) != dim:
            raise PolytopeFileError(f"vertex row {row!r} does not have length {dim}")
        vert = []
        for x in row:
            if isinstance(x, bool) or not isinstance(x, (int, str)):
                raise PolytopeFileError(f"coordinate {x!r} must be an integer or 'a/b' string")
            try:
                vert.append(parse_rational(x))
            except (ValueError, ZeroDivisionError) as exc:
                raise PolytopeFileError(f"bad rational {x!r}") from exc
        verts.append(tuple(vert))
    return verts


def load_polytope(path):
    with open(path, "r", encoding="utf-8") as fh:
        return Polytope(parse_polytope_text(fh.read()))


def serialize_polytope(p):
    rows = []
    for v in p.vertices:
        rows.append([x if isinstance(x, int) else format_rational(x) for x in v])
    return json.dumps({"dim": p.ambient_dim, "vertices": rows}, separators=(", ", ": "))


def format_point(v):
    return "(" + ",".join(format_rational(norm_scalar(x)) for x in v) + ")"


def result_header():
    return json.dumps({"schema": RESULT_SCHEMA, "version": RESULT_VERSION})


def record_to_json(rec):
    return json.dumps(
        {
            "digest": rec.digest,
            "vertices": [list(row) for row in rec.vertices],
            "width": rec.width,
            "mu": format_rational(rec.mu),
            "dim_F_at_mu": rec.dim_f_at_mu,
            "flags": {
                "F_hollow": rec.f_hollow,
                "weakly_sporadic": rec.weakly_sporadic,
                "sporadic": rec.sporadic,
                "canonically_closed_at_mu": rec.canonically_closed_at_mu,
            },
            "gorenstein": rec.gorenstein.index if rec.gorenstein else None,
            "provenance": rec.provenance,
        },
        separators=(",", ":"),
    )


def write_records(path, records):
    """Records sorted by digest behind a schema header line."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(result_header() + "\n")
        for rec in sorted(records, key=lambda r: r.digest):
            fh.write(record_to_json(rec) + "\n")


def read_records(path):
    with open(path, "r", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        if header.get("schema") != RESULT_SCHEMA:
            raise PolytopeFileError("not a finepoly result file")
        return [json.loads(line) for line in fh if line.strip()]
