import json
import subprocess
import sys

import pytest

from finepoly.catalog import delta2
from finepoly.formats import (
    PolytopeFileError,
    parse_polytope_text,
    serialize_polytope,
    write_records,
    read_records,
)
from finepoly.polytope import Polytope


def run_cli(args, **kw):
    return subprocess.run(
        [sys.executable, "-m", "finepoly.cli", *args],
        capture_output=True, text=True, **kw,
    )


def write_poly(tmp_path, name, dim, vertices):
    path = tmp_path / name
    path.write_text(json.dumps({"dim": dim, "vertices": vertices}))
    return str(path)


def test_polytope_file_roundtrip():
    p = Polytope([(0, 0), (2, 0), (0, 2)])
    text = serialize_polytope(p)
    assert Polytope(parse_polytope_text(text)) == p
    from fractions import Fraction

    q = Polytope([(Fraction(1, 2), 0), (1, 0), (0, 1)])
    assert Polytope(parse_polytope_text(serialize_polytope(q))) == q


def test_polytope_file_rejects_bad_rows():
    with pytest.raises(PolytopeFileError):
        parse_polytope_text(json.dumps({"dim": 2, "vertices": [[0, 0, 0]]}))
    with pytest.raises(PolytopeFileError):
        parse_polytope_text("not json")
    with pytest.raises(PolytopeFileError):
        parse_polytope_text(json.dumps({"dim": 2, "vertices": [[0, 0.5]]}))


def test_cmd_fine_reflexive_triangle(tmp_path):
    f = write_poly(tmp_path, "t3.json", 2, [[0, 0], [3, 0], [0, 3]])
    out = run_cli(["fine", f])
    assert out.returncode == 0
    assert out.stdout.strip() == "(1,1)"


def test_cmd_fine_empty_and_dilation(tmp_path):
    f = write_poly(tmp_path, "t2.json", 2, [[0, 0], [2, 0], [0, 2]])
    assert run_cli(["fine", f]).stdout.strip() == "empty"
    assert run_cli(["fine", f, "--dilation", "3/2"]).stdout.strip() == "(1,1)"
    assert run_cli(["fine", f, "--brute", "2"]).stdout.strip() == "empty"


def test_cmd_fine_parse_error_exit_codes(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert run_cli(["fine", str(bad)]).returncode == 2
    wrongdim = write_poly(tmp_path, "w.json", 6, [[0] * 6, [1] * 6])
    assert run_cli(["fine", wrongdim]).returncode == 3
    lower = write_poly(tmp_path, "seg.json", 2, [[0, 0], [1, 1]])
    assert run_cli(["fine", lower]).returncode == 3


def test_cmd_multipliers(tmp_path):
    f = write_poly(tmp_path, "d2.json", 2, [[0, 0], [1, 0], [0, 1]])
    out = run_cli(["multipliers", f])
    assert out.returncode == 0
    assert "mu = 3" in out.stdout
    assert "mu_max = 3" in out.stdout
    f2 = write_poly(tmp_path, "d244.json", 3,
                    [[0, 0, 0], [2, 0, 0], [0, 4, 0], [0, 0, 4]])
    assert "mu = 5/4" in run_cli(["multipliers", f2]).stdout


def test_cmd_classify_polygons(tmp_path):
    out_path = tmp_path / "polygons.jsonl"
    out = run_cli(["classify", "polygons", "--out", str(out_path), "--check"])
    assert out.returncode == 0
    assert "4 classes" in out.stdout
    records = read_records(str(out_path))
    assert len(records) == 4
    digests = [r["digest"] for r in records]
    assert digests == sorted(digests)
    # deterministic across runs
    out2_path = tmp_path / "again.jsonl"
    run_cli(["classify", "polygons", "--out", str(out2_path)])
    assert out_path.read_text().splitlines()[1:] == out2_path.read_text().splitlines()[1:]


def test_cmd_verify_single_polytope(tmp_path):
    f = write_poly(tmp_path, "t3.json", 2, [[0, 0], [3, 0], [0, 3]])
    out = run_cli(["verify", f])
    assert out.returncode == 0
    assert "FAIL" not in out.stdout
    assert "PASS" in out.stdout


def test_cmd_verify_low_bound_reports_superset(tmp_path):
    f = write_poly(tmp_path, "d236.json", 3,
                   [[0, 0, 0], [2, 0, 0], [0, 3, 0], [0, 0, 6]])
    out = run_cli(["verify", f, "--bound", "1"])
    assert out.returncode == 0
    assert "superset" in out.stdout


def test_verify_harness_detects_corruption():
    from finepoly.verify import run_verify
    from finepoly.catalog import delta2 as d2

    results = run_verify({"probe": d2(3)}, corrupt="offset")
    assert any(not r.ok for r in results)


def test_records_file_schema(tmp_path):
    from finepoly.classify import classify_polygons

    path = tmp_path / "recs.jsonl"
    write_records(str(path), classify_polygons())
    lines = path.read_text().splitlines()
    header = json.loads(lines[0])
    assert header["schema"] == "finepoly-classification"
    rec = json.loads(lines[1])
    assert set(rec) == {
        "digest", "vertices", "width", "mu", "dim_F_at_mu", "flags",
        "gorenstein", "provenance",
    }
    assert isinstance(rec["mu"], str)
