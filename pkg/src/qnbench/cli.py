"""Command-line entry point: solve, bench, profile, check, list.

Exit codes: 0 success, 1 solver non-convergence (or failed checks), 2 usage
errors.  Human-readable summaries go to stdout; machine artifacts are written
only to paths given explicitly via --out/--trace/--table/--svg.
"""

from __future__ import annotations

import argparse
import sys

from qnbench.bench import (
    SOLVER_FUNCS,
    dolan_more,
    emit_profile_svg,
    emit_table,
    profiles_to_csv,
    records_from_csv,
    records_to_csv,
    run_suite,
)
from qnbench.objectives import check_gradient, default_check_points
from qnbench.solvers import (
    MODE_B_FORM,
    MODE_H_FORM_LITERAL,
    SolverConfig,
    trace_to_csv,
)
from qnbench.suite import UnknownProblemError, lookup, manifest_csv, suite

_MODES = {"b-form": MODE_B_FORM, "h-form": MODE_H_FORM_LITERAL}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qnbench",
        description="Two-phase quasi-Newton and BFGS benchmark harness.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one solver on one problem")
    solve.add_argument("--problem", required=True, help="suite problem name")
    solve.add_argument("--solver", required=True, choices=sorted(SOLVER_FUNCS))
    solve.add_argument("--lambda", dest="lam", type=float, default=0.5,
                       help="operator mixing weight in (0, 1)")
    solve.add_argument("--tol", type=float, default=1e-6,
                       help="gradient-norm stopping tolerance")
    solve.add_argument("--max-iter", type=int, default=500)
    solve.add_argument("--mode", choices=sorted(_MODES), default="b-form",
                       help="operator realization for the two-phase solver")
    solve.add_argument("--trace", metavar="PATH", help="write the iterate trace CSV")

    bench = sub.add_parser("bench", help="run both solvers over the whole suite")
    bench.add_argument("--runs", type=int, default=5, help="timed runs per pair")
    bench.add_argument("--out", metavar="PATH", help="write the results CSV")
    bench.add_argument("--table", metavar="PATH", help="write the Markdown table")

    profile = sub.add_parser("profile", help="performance profiles from a results CSV")
    profile.add_argument("--in", dest="infile", required=True, metavar="PATH")
    profile.add_argument("--metric", choices=["iterations", "time"], default="iterations")
    profile.add_argument("--out", required=True, metavar="PATH",
                         help="write the profile CSV")
    profile.add_argument("--svg", metavar="PATH", help="write a step-plot SVG")

    sub.add_parser("check", help="gradient-check every suite function")
    sub.add_parser("list", help="print the suite manifest CSV")
    return parser


def _cmd_solve(args) -> int:
    try:
        problem = lookup(args.problem)
    except UnknownProblemError as err:
        print(f"qnbench solve: {err.args[0]}", file=sys.stderr)
        return 2
    try:
        cfg = SolverConfig(lam=args.lam, tol=args.tol, max_iter=args.max_iter,
                           mode=_MODES[args.mode])
    except ValueError as err:
        print(f"qnbench solve: {err}", file=sys.stderr)
        return 2
    objective = problem.objective
    result = SOLVER_FUNCS[args.solver](objective, objective.standard_start, cfg)
    print(f"problem:         {problem.name} (n={objective.dimension})")
    print(f"solver:          {args.solver} ({args.mode})")
    print(f"termination:     {result.termination}")
    print(f"iterations:      {result.iterations}")
    print(f"final f:         {result.final_f:.12g}")
    print(f"final grad norm: {result.final_grad_norm:.6e}")
    print(f"evaluations:     f={result.f_evals} grad={result.g_evals}")
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as stream:
            stream.write(trace_to_csv(result))
        print(f"trace written:   {args.trace}")
    return 0 if result.converged else 1


def _cmd_bench(args) -> int:
    if args.runs < 1:
        print("qnbench bench: --runs must be >= 1", file=sys.stderr)
        return 2
    records = run_suite(runs=args.runs)
    table = emit_table(records)
    print(table.markdown, end="")
    converged = {s: sum(1 for r in records if r.solver == s and r.converged)
                 for s in ("bfgs", "two-phase")}
    total = len(suite())
    print(f"\nconverged: bfgs {converged['bfgs']}/{total}, "
          f"two-phase {converged['two-phase']}/{total}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as stream:
            stream.write(records_to_csv(records))
        print(f"results written: {args.out}")
    if args.table:
        with open(args.table, "w", encoding="utf-8") as stream:
            stream.write(table.markdown)
        print(f"table written:   {args.table}")
    return 0 if all(r.converged for r in records) else 1


def _cmd_profile(args) -> int:
    try:
        with open(args.infile, "r", encoding="utf-8") as stream:
            records = records_from_csv(stream.read())
    except OSError as err:
        print(f"qnbench profile: cannot read {args.infile}: {err}", file=sys.stderr)
        return 2
    if not records:
        print("qnbench profile: no records in input", file=sys.stderr)
        return 2
    curves = dolan_more(records, metric=args.metric)
    for curve in curves:
        p_at_one = next(p for tau, p in curve.points if tau == 1.0)
        print(f"{curve.solver}: P(1) = {p_at_one:.4g}")
    with open(args.out, "w", encoding="utf-8") as stream:
        stream.write(profiles_to_csv(curves))
    print(f"profile written: {args.out}")
    if args.svg:
        emit_profile_svg(curves, args.svg)
        print(f"svg written:     {args.svg}")
    return 0


def _cmd_check(args) -> int:
    failures = 0
    for problem in suite():
        objective = problem.objective
        report = check_gradient(objective, default_check_points(objective))
        verdict = "ok" if report.passed else "FAIL"
        print(f"{objective.name:35s} max rel error {report.max_rel_error:.3e}  {verdict}")
        if not report.passed:
            failures += 1
    print(f"\n{len(suite()) - failures}/{len(suite())} gradient checks passed")
    return 0 if failures == 0 else 1


def _cmd_list(args) -> int:
    print(manifest_csv(), end="")
    return 0


_COMMANDS = {
    "solve": _cmd_solve,
    "bench": _cmd_bench,
    "profile": _cmd_profile,
    "check": _cmd_check,
    "list": _cmd_list,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:  # argparse exits 2 on usage errors, 0 on --help
        return int(exit_.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
