"""Command-line driver: transform, verify, orbit, list-properties.

Exit codes: 0 success, 1 property failure, 2 usage/parse error, 3 numeric
failure.  The ALUTHGE_TOL environment variable overrides eq_tol.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from .aluthge import aluthge, aluthge_orbit, quasinormal_residual
from .harness import DEFAULT_LAMBDA_GRID, DEFAULT_PROFILES, REGISTRY, SuiteConfig, UnknownProperty, run_suite
from .linalg import DEFAULT_TOL, NoConvergence, NotPSD, TolerancePolicy
from .serial import SerializationError, algelem_from_json, algelem_to_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3


def _tolerance() -> TolerancePolicy:
    raw = os.environ.get("ALUTHGE_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return TolerancePolicy(eq_tol=float(raw))
    except (TypeError, ValueError) as exc:
        raise SystemExit(f"bad ALUTHGE_TOL: {exc}")


def _load_elem(path):
    with open(path) as fh:
        return algelem_from_json(json.load(fh))


def _dump_json(obj, path):
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def cmd_transform(args) -> int:
    try:
        a = _load_elem(args.infile)
    except (OSError, json.JSONDecodeError, SerializationError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out = aluthge(a, args.lam, _tolerance())
    except (NotPSD, NoConvergence) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _dump_json(algelem_to_json(out), args.outfile)
    return EXIT_OK


def _parse_profiles(raw: str):
    """'2,2;1,3' -> ((2, 2), (1, 3)); commas split dims, semicolons profiles."""
    profiles = []
    for chunk in raw.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        profiles.append(tuple(int(tok) for tok in chunk.split(",")))
    if not profiles:
        raise ValueError("no profiles given")
    return tuple(profiles)


def cmd_verify(args) -> int:
    try:
        profiles = _parse_profiles(args.profiles) if args.profiles else DEFAULT_PROFILES
        cfg = SuiteConfig(
            seed=args.seed,
            lambda_grid=DEFAULT_LAMBDA_GRID,
            block_profiles=profiles,
            trials_per_property=args.trials,
            tol=_tolerance(),
        )
        selection = "all" if args.suite == "all" else [s for s in args.suite.split(",") if s]
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        report = run_suite(cfg, selection)
    except UnknownProperty as exc:
        print(f"usage error: unknown property {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (NotPSD, NoConvergence) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if args.report:
        _dump_json(report, args.report)
    for entry in report["results"]:
        status = "ok" if entry["ok"] else "FAILED"
        expected = "" if entry["expected_outcome"] == "pass" else " (expected-fail)"
        print(f"{status:7s} {entry['property_id']}{expected}")
    print("suite:", "ok" if report["all_ok"] else "FAILED")
    return EXIT_OK if report["all_ok"] else EXIT_FAIL


def cmd_orbit(args) -> int:
    try:
        a = _load_elem(args.infile)
    except (OSError, json.JSONDecodeError, SerializationError) as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    tol = _tolerance()
    try:
        orbit = aluthge_orbit(a, args.lam, args.steps, tol)
    except (NotPSD, NoConvergence) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with open(args.outfile, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["step", "quasinormal_residual", "distance_to_previous"])
        for step, elem in enumerate(orbit):
            dist = 0.0 if step == 0 else (elem - orbit[step - 1]).norm()
            writer.writerow([step, f"{quasinormal_residual(elem, tol):.12e}", f"{dist:.12e}"])
    return EXIT_OK


def cmd_list_properties(args) -> int:
    for pid, prop in sorted(REGISTRY.items()):
        tag = "expected-fail" if prop.expect == "fail" else "expected-pass"
        print(f"{pid:35s} [{tag}] {prop.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aluthge-lab",
        description="Polar decompositions, lambda-Aluthge transforms and preserver-map verification on block matrix algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    t = sub.add_parser("transform", help="apply the lambda-Aluthge transform to a JSON element")
    t.add_argument("--lambda", dest="lam", type=float, required=True)
    t.add_argument("--in", dest="infile", required=True)
    t.add_argument("--out", dest="outfile", required=True)
    t.set_defaults(func=cmd_transform)

    v = sub.add_parser("verify", help="run seeded property suites and emit a JSON report")
    v.add_argument("--seed", type=int, required=True)
    v.add_argument("--suite", default="all", help="'all' or a comma-separated list of property ids")
    v.add_argument("--profiles", default=None, help="block profiles, e.g. '2,2;1,3' (semicolons separate profiles)")
    v.add_argument("--trials", type=int, default=200, help="trials per property (default 200)")
    v.add_argument("--report", default=None, help="path for the JSON report")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("orbit", help="iterate the transform and emit a CSV of residuals")
    o.add_argument("--lambda", dest="lam", type=float, required=True)
    o.add_argument("--steps", type=int, required=True)
    o.add_argument("--in", dest="infile", required=True)
    o.add_argument("--out", dest="outfile", required=True)
    o.set_defaults(func=cmd_orbit)

    lp = sub.add_parser("list-properties", help="enumerate every property id in the registry")
    lp.set_defaults(func=cmd_list_properties)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses exit code 2 for usage errors already; re-raise others
        raise SystemExit(EXIT_USAGE if exc.code not in (0, None) else exc.code)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
