"""Command-line front end.

Subcommands: ``mean`` (barycenter of an ensemble file), ``distance`` and
``geodesic`` (between two matrix files), ``generate`` (seeded random ensemble
files), ``verify`` (inequality suite). Exit codes: 0 success, 1 malformed
input, 2 solver non-convergence, 3 verification failure.
"""

import argparse
import sys

import numpy as np

from .barycenter import SolverBreakdownError, SolverConfig, wasserstein_mean
from .bures import bw_distance, geodesic
from .checks import DEFAULT_CHECKS, SuitePlan, random_ensemble, run_suite
from .io import (
    FormatError,
    dumps_canonical,
    ensemble_to_json_dict,
    load_ensemble,
    load_matrix,
    load_plan,
    matrix_to_json_dict,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NO_CONVERGENCE = 2
EXIT_CHECK_FAILED = 3


def _write(args, payload_json, payload_text):
    text = payload_json if args.format == "json" else payload_text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _matrix_text(mat):
    return np.array2string(np.asarray(mat), precision=12, suppress_small=False) + "\n"


def cmd_mean(args):
    ensemble = load_ensemble(args.ensemble)
    config = SolverConfig(max_iter=args.max_iter, residual_tol=args.tol)
    report = wasserstein_mean(ensemble, config)
    doc = report.to_json_dict()
    doc["config"] = {"max_iter": config.max_iter, "residual_tol": config.residual_tol}
    text = (
        f"converged: {report.converged}\n"
        f"iterations: {report.iterations}\n"
        f"residual: {report.residual:.6e}\n"
        f"objective: {report.objective:.6e}\n"
        f"mean:\n{_matrix_text(report.mean)}"
    )
    _write(args, dumps_canonical(doc), text)
    return EXIT_OK if report.converged else EXIT_NO_CONVERGENCE


def cmd_distance(args):
    a = load_matrix(args.a)
    b = load_matrix(args.b)
    value = bw_distance(a, b)
    _write(args, dumps_canonical({"distance": value}), f"distance: {value:.12e}\n")
    return EXIT_OK


def cmd_geodesic(args):
    a = load_matrix(args.a)
    b = load_matrix(args.b)
    point = geodesic(a, b, args.t)
    _write(args, dumps_canonical(matrix_to_json_dict(point)), _matrix_text(point))
    return EXIT_OK


def cmd_generate(args):
    if args.m < 1 or args.n < 1:
        raise ValueError(f"m and n must be positive (got m={args.m}, n={args.n})")
    ensemble = random_ensemble(
        args.m, args.n, args.seed,
        eig_lo=args.eig_lo, eig_hi=args.eig_hi, commuting=args.commuting,
    )
    doc = ensemble_to_json_dict(ensemble)
    _write(args, dumps_canonical(doc), dumps_canonical(doc))
    return EXIT_OK


def _parse_checks(arg):
    if arg == "all":
        return list(DEFAULT_CHECKS)
    if arg == "none":
        return []
    return [name.strip() for name in arg.split(",") if name.strip()]


def cmd_verify(args):
    if args.plan:
        plan = load_plan(args.plan)
    else:
        plan = SuitePlan(
            checks=_parse_checks(args.checks),
            seeds=(args.seed, args.seed + args.seed_count),
            tol=args.tol,
        )
    reports = run_suite(plan)
    doc = [r.to_json_dict() for r in reports]
    lines = []
    for r in reports:
        verdict = "skip" if r.skipped else ("pass" if r.holds else "FAIL")
        lines.append(f"{verdict:4s} {r.check_name:28s} margin={r.margin: .3e}")
    failed = [r for r in reports if not r.skipped and not r.holds]
    skipped = [r for r in reports if r.skipped]
    lines.append(
        f"{len(reports) - len(failed) - len(skipped)} passed, "
        f"{len(failed)} failed, {len(skipped)} skipped"
    )
    _write(args, dumps_canonical(doc), "\n".join(lines) + "\n")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="wassmean",
        description="Bures-Wasserstein distances, geodesics, barycenters and "
        "Loewner-order inequality checks for positive definite matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_output_flags(p):
        p.add_argument("--format", choices=("json", "text"), default="json",
                       help="output format (default: json)")
        p.add_argument("--out", default=None, help="write output to this path "
                       "instead of stdout")

    p_mean = sub.add_parser("mean", help="Wasserstein mean of an ensemble file")
    p_mean.add_argument("ensemble", help="ensemble JSON path")
    p_mean.add_argument("--tol", type=float, default=1e-11,
                        help="residual tolerance (default: 1e-11)")
    p_mean.add_argument("--max-iter", type=int, default=200,
                        help="iteration budget (default: 200)")
    add_output_flags(p_mean)
    p_mean.set_defaults(func=cmd_mean)

    p_dist = sub.add_parser("distance", help="distance between two matrix files")
    p_dist.add_argument("a", help="first matrix JSON path")
    p_dist.add_argument("b", help="second matrix JSON path")
    add_output_flags(p_dist)
    p_dist.set_defaults(func=cmd_distance)

    p_geo = sub.add_parser("geodesic", help="point on the geodesic between two "
                           "matrix files")
    p_geo.add_argument("a", help="first matrix JSON path")
    p_geo.add_argument("b", help="second matrix JSON path")
    p_geo.add_argument("--t", type=float, required=True,
                       help="geodesic parameter in [0, 1]")
    add_output_flags(p_geo)
    p_geo.set_defaults(func=cmd_geodesic)

    p_gen = sub.add_parser("generate", help="seeded random ensemble file")
    p_gen.add_argument("--m", type=int, required=True, help="matrix dimension")
    p_gen.add_argument("--n", type=int, required=True, help="ensemble size")
    p_gen.add_argument("--seed", type=int, default=0, help="seed (default: 0)")
    p_gen.add_argument("--eig-lo", type=float, default=0.5,
                       help="spectrum lower edge (default: 0.5)")
    p_gen.add_argument("--eig-hi", type=float, default=2.0,
                       help="spectrum upper edge (default: 2.0)")
    p_gen.add_argument("--commuting", action="store_true",
                       help="share one eigenbasis across the ensemble")
    add_output_flags(p_gen)
    p_gen.set_defaults(func=cmd_generate)

    p_ver = sub.add_parser("verify", help="run the inequality suite")
    p_ver.add_argument("--plan", default=None, help="suite plan JSON path "
                       "(overrides the flags below)")
    p_ver.add_argument("--checks", default="all",
                       help="comma-separated check names, 'all' or 'none' "
                       "(default: all)")
    p_ver.add_argument("--seed", type=int, default=0,
                       help="first seed of the range (default: 0)")
    p_ver.add_argument("--seed-count", type=int, default=50,
                       help="number of seeds per check (default: 50)")
    p_ver.add_argument("--tol", type=float, default=1e-8,
                       help="Loewner margin tolerance (default: 1e-8)")
    add_output_flags(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverBreakdownError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entrypoint():
    raise SystemExit(main())
