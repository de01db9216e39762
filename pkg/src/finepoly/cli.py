"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 parse error, 3 dimension
violation, 4 count-assertion failure under --check.  Results go to stdout,
progress notes to stderr; identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import argparse
import os
import sys
from collections import Counter
from fractions import Fraction

from .classify import (
    DedupStore,
    bipyramid_census,
    classify_polygons,
    classify_sporadic,
    classify_weakly_sporadic_all,
)
from .fine import fine_interior_bruteforce, multiplier_profile
from .formats import (
    PolytopeFileError,
    format_point,
    load_polytope,
    record_to_json,
    result_header,
    write_records,
)
from .linalg import format_rational, parse_rational
from .verify import run_verify

EXIT_VERIFY = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_CHECK = 4

PAPER_COUNTS = {"polygons": 4, "weakly-sporadic": 114, "sporadic": 1368}


def _log(msg):
    print(msg, file=sys.stderr)


def _load(path):
    try:
        return load_polytope(path)
    except PolytopeFileError as exc:
        _log(f"error: {exc}")
        raise SystemExit(EXIT_PARSE)
    except ValueError as exc:
        _log(f"error: {exc}")
        raise SystemExit(EXIT_DIMENSION)


def cmd_fine(args):
    p = _load(args.file)
    lam = parse_rational(args.dilation) if args.dilation else 1
    if isinstance(lam, Fraction) or isinstance(lam, int):
        if lam < 0:
            _log("error: dilation must be nonnegative")
            raise SystemExit(EXIT_DIMENSION)
    try:
        if args.brute is not None:
            if lam != 1:
                p = p.dilate(lam)
            f = fine_interior_bruteforce(p, args.brute)
        else:
            f = multiplier_profile(p).fine_at(lam)
    except ValueError as exc:
        _log(f"error: {exc}")
        raise SystemExit(EXIT_DIMENSION)
    if f.is_empty:
        print("empty")
    else:
        print(" ".join(format_point(v) for v in f.vertices))


def cmd_multipliers(args):
    p = _load(args.file)
    try:
        profile = multiplier_profile(p)
    except ValueError as exc:
        _log(f"error: {exc}")
        raise SystemExit(EXIT_DIMENSION)
    print(f"mu = {format_rational(profile.mu)}")
    print(f"mu_max = {format_rational(profile.mu_max)}")
    print(f"mu_cc = {format_rational(profile.mu_cc)}")
    print("special multipliers: " + " ".join(format_rational(m) for m in profile.special_multipliers))
    print("fan vertices:")
    for mu, x in profile.vertices:
        print(f"  ({format_rational(mu)}; {format_point(x)})")


def _mu_histogram(records):
    hist = Counter(format_rational(r.mu) for r in records)
    return " ".join(f"{mu}x{n}" for mu, n in sorted(hist.items()))


def cmd_classify(args):
    jobs = args.jobs
    store = None
    if args.out:
        store = DedupStore(log_path=args.out + ".log")
        store.open_log(resume=args.resume)
    try:
        if args.target == "polygons":
            records = classify_polygons(jobs=jobs)
        elif args.target == "weakly-sporadic":
            records = classify_weakly_sporadic_all(jobs=jobs, store=store)
        else:
            records = classify_sporadic(jobs=jobs, store=store)
    finally:
        if store is not None:
            store.close()
    if args.out:
        write_records(args.out, records)
        _log(f"wrote {len(records)} records to {args.out}")
    else:
        print(result_header())
        for rec in sorted(records, key=lambda r: r.digest):
            print(record_to_json(rec))
    summary = f"{len(records)} classes; mu: {_mu_histogram(records)}"
    if args.target == "sporadic" and args.census:
        summary += f"; bipyramids: {bipyramid_census(records)}"
    print(summary)
    if args.check and len(records) != PAPER_COUNTS[args.target]:
        _log(f"error: expected {PAPER_COUNTS[args.target]} classes, got {len(records)}")
        raise SystemExit(EXIT_CHECK)


def cmd_verify(args):
    polytopes = None
    if args.file:
        polytopes = {"input": _load(args.file)}
    results = run_verify(polytopes=polytopes, bound=args.bound, seed=args.seed)
    failures = 0
    by_name = {}
    for r in results:
        by_name.setdefault(r.name, []).append(r)
    for name in sorted(by_name):
        group = by_name[name]
        bad = [r for r in group if not r.ok]
        failures += len(bad)
        status = "PASS" if not bad else "FAIL"
        note = ""
        supersets = [r for r in group if r.ok and "superset" in r.detail]
        if supersets:
            note = " (oracle superset only)"
        print(f"{status} {name} [{len(group) - len(bad)}/{len(group)}]{note}")
        for r in bad:
            print(f"     {r.polytope}: {r.detail}")
    if failures:
        _log(f"{failures} property checks failed")
        raise SystemExit(EXIT_VERIFY)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="finepoly",
        description="Exact Fine interiors of rational polytopes and their dilations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fine = sub.add_parser("fine", help="Fine interior of a polytope (or a dilation)")
    p_fine.add_argument("file", help="polytope JSON file")
    p_fine.add_argument("--dilation", help="rational dilation factor p/q", default=None)
    p_fine.add_argument("--brute", type=int, default=None,
                        help="use the exhaustive oracle with this dual-vector bound")
    p_fine.set_defaults(func=cmd_fine)

    p_mult = sub.add_parser("multipliers", help="special multipliers and the fan polyhedron")
    p_mult.add_argument("file")
    p_mult.set_defaults(func=cmd_multipliers)

    default_jobs = int(os.environ.get("FINEPOLY_JOBS", "1"))
    p_cls = sub.add_parser("classify", help="run a classification pipeline")
    p_cls.add_argument("target", choices=["polygons", "weakly-sporadic", "sporadic"])
    p_cls.add_argument("--out", default=None, help="write JSONL records here")
    p_cls.add_argument("--jobs", type=int, default=default_jobs)
    p_cls.add_argument("--resume", action="store_true",
                       help="replay the dedup log next to --out and continue")
    p_cls.add_argument("--check", action="store_true",
                       help="exit 4 unless the class count matches the published value")
    p_cls.add_argument("--census", action="store_true", help="include the bipyramid census")
    p_cls.set_defaults(func=cmd_classify)

    p_ver = sub.add_parser("verify", help="run the exact property harness")
    p_ver.add_argument("file", nargs="?", default=None,
                       help="polytope JSON file (default: the named corpus)")
    p_ver.add_argument("--corpus", action="store_true", help="force the named corpus")
    p_ver.add_argument("--bound", type=int, default=None,
                       help="dual-vector bound for the brute-force oracle")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
