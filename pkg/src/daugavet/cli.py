"""Command-line entry point.

Exit codes: 0 the Daugavet equation holds / no finding, 1 it fails or a
finding was produced, 2 input error.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import sys
from pathlib import Path

from . import __version__
from .asymptotic import BoundViolation, dual_study, refinement_study
from .daugavet import (
    brute_force_norm,
    complex_sweep_max,
    daugavet_report,
    norm_id_plus_scaled,
)
from .foias import BoundViolated, NoNegativePatch, Stalled, escalate, mock_oracle, oracle_from_spec, MOCKS
from .io import (
    dumps,
    finding_to_json,
    load_kernel_file,
    report_file,
    scalar_to_json,
)
from .models import discretize
from .operator import identity_plus, sup_operator_norm
from .scalars import InputError, close, format_scalar, to_fraction
from .search import PREDICATES, SEARCH_CLASSES, THEOREM_PREDICATES, SearchConfig, search_counterexamples


def _operator(inp, level):
    if inp.spec is not None:
        if level is None:
            raise InputError("spec inputs require --level")
        return discretize(inp.spec, level, inp.scalar or "auto", inp.tol)
    if level is not None:
        raise InputError("--level only applies to spec inputs")
    return inp.operator


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def cmd_check(args) -> int:
    inp = load_kernel_file(args.input)
    T = _operator(inp, args.level)
    rep = daugavet_report(T)
    _write(args.output, dumps(report_file(rep, inp.raw, args.level, T.n)))
    if args.output not in (None, "-"):
        print(f"defect {format_scalar(rep.defect)} ({'holds' if rep.holds else 'fails'})")
    return 0 if rep.holds else 1


def _levels(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"--levels must be comma-separated integers, got {text!r}") from exc


def _csv_value(x):
    return str(x) if not isinstance(x, float) else repr(x)


def cmd_refine(args) -> int:
    inp = load_kernel_file(args.spec)
    if inp.spec is None:
        raise InputError("refine needs a spec file")
    study_fn = dual_study if args.dual else refinement_study
    try:
        study = study_fn(inp.spec, _levels(args.levels), inp.scalar or "auto", inp.tol)
    except BoundViolation as exc:
        print(f"bound violated: {exc}", file=sys.stderr)
        return 1
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["level", "opnorm", "defect", "defect_bound", "max_abs_diag"])
    for row in study.csv_rows():
        writer.writerow([_csv_value(v) for v in row])
    _write(args.csv, buf.getvalue())
    return 0


def cmd_sweep(args) -> int:
    inp = load_kernel_file(args.input)
    T = _operator(inp, args.level)
    lam, value = complex_sweep_max(T)
    target = 1 + sup_operator_norm(T)
    ok = close(value, target, T.tol)
    print(f"lambda* = {format_scalar(lam)}")
    print(f"value = {format_scalar(value)}")
    print(f"1 + ||T|| = {format_scalar(target)}")
    print("match" if ok else "mismatch")
    return 0 if ok else 1


def cmd_escalate(args) -> int:
    if (args.spec is None) == (args.mock is None):
        raise InputError("give exactly one of --spec or --mock")
    if args.mock is not None:
        oracle = mock_oracle(args.mock, args.bound, args.max_level)
    else:
        inp = load_kernel_file(args.spec)
        if inp.spec is None:
            raise InputError("--spec needs a spec file")
        oracle = oracle_from_spec(inp.spec, to_fraction(args.bound), args.max_level)
    outcome = escalate(oracle, to_fraction(args.beta), args.mode)
    match outcome:
        case BoundViolated(chain):
            print(f"BoundViolated, {len(chain.points)} points, mass {format_scalar(chain.certified_mass)}")
            lo, hi = chain.patch
            print(f"patch [{lo}, {hi}), beta {format_scalar(chain.beta)}")
            for j, s in enumerate(chain.points):
                print(f"s_{j} = {s}")
            return 1
        case Stalled(step, reason, _):
            print(f"Stalled at step {step}: {reason}")
            return 0
        case NoNegativePatch(level):
            print(f"NoNegativePatch (searched to level {level})")
            return 0


def cmd_search(args) -> int:
    config = SearchConfig(args.kind, args.n, args.trials, args.seed, args.predicate, args.scalar)
    findings = search_counterexamples(config)
    print(f"findings: {len(findings)}")
    if args.output:
        _write(args.output, dumps([finding_to_json(f) for f in findings]))
    return 1 if findings and args.predicate in THEOREM_PREDICATES else 0


def cmd_oracle(args) -> int:
    inp = load_kernel_file(args.input)
    T = _operator(inp, args.level)
    pairs = [
        ("||T||", sup_operator_norm(T), brute_force_norm(T)),
        ("||I+T||", norm_id_plus_scaled(T, 1), brute_force_norm(identity_plus(T, 1))),
        ("||I-T||", norm_id_plus_scaled(T, -1), brute_force_norm(identity_plus(T, -1))),
    ]
    ok = True
    for name, formula, brute in pairs:
        print(f"{name}: formula {format_scalar(formula)}, brute force {format_scalar(brute)}")
        ok = ok and close(formula, brute, T.tol)
    print("match" if ok else "mismatch")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="daugavet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"daugavet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Daugavet report for a kernel file")
    p.add_argument("--input", required=True)
    p.add_argument("--level", type=int)
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("refine", help="defect across grid levels (CSV)")
    p.add_argument("--spec", required=True)
    p.add_argument("--levels", required=True)
    p.add_argument("--dual", action="store_true")
    p.add_argument("--csv", required=True)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("sweep", help="maximise ||I + lam*T|| over |lam| = 1")
    p.add_argument("--input", required=True)
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("escalate", help="run the escalation procedure on a kernel oracle")
    p.add_argument("--spec")
    p.add_argument("--mock", choices=sorted(MOCKS))
    p.add_argument("--beta", required=True)
    p.add_argument("--bound", required=True)
    p.add_argument("--max-level", type=int, default=6)
    p.add_argument("--mode", choices=("atom", "norm"), default="atom")
    p.set_defaults(func=cmd_escalate)

    p = sub.add_parser("search", help="random property search")
    p.add_argument("--class", dest="kind", required=True, choices=SEARCH_CLASSES)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--predicate", required=True, choices=PREDICATES)
    p.add_argument("--scalar", choices=("exact", "float"), default="exact")
    p.add_argument("--output")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("oracle", help="compare formula norms with sign-vector enumeration")
    p.add_argument("--input", required=True)
    p.add_argument("--level", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
