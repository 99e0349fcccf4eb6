"""Command-line surface: solve, gen, oracle, bench, validate.

Exit codes: 0 success with a violation-free solution; 2 validation errors;
3 parse errors; 4 infeasible; 5 solution produced but it violates
constraints (possible for the constraint-oblivious gonzalez baseline).
Errors are emitted as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time

from .assign import assign, verify_assignment
from .baselines import OracleSizeError, exact_opt
from .bench import SOLVERS, run_solver, sweep, write_rows
from .constraints import InfeasibleConstraintsError
from .driver import GUARANTEE_BEST_EFFORT, GUARANTEE_INFEASIBLE, Solution, solve
from .instance import Instance
from .io import ParseError, build_report, load_instance, save_instance, write_report
from .metric import METRICS
from .solver import solve_with_threshold
from .synthgen import GenParams, GenerationError, generate

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PARSE = 3
EXIT_INFEASIBLE = 4
EXIT_VIOLATIONS = 5


def _fail(code: int, category: str, detail: str) -> int:
    print(json.dumps({"error": category, "detail": detail}), file=sys.stderr)
    return code


def _load_from_args(args) -> Instance:
    return load_instance(
        points_path=args.points,
        constraints_path=args.constraints,
        bundle_path=args.instance,
        k=args.k,
        metric=args.metric,
    )


def _emit_report(args, instance, solver_name, solution, wall_ms) -> int:
    report = build_report(
        instance,
        solver_name,
        solution,
        wall_ms,
        include_assignment=getattr(args, "emit_assignment", False),
    )
    if args.out:
        write_report(report, args.out, fmt=args.format, stable=args.stable)
    else:
        d = report.to_dict()
        if args.stable:
            d["wall_time_ms"] = None
        print(json.dumps(d, indent=1))
    if solution.guarantee == GUARANTEE_INFEASIBLE:
        return _fail(EXIT_INFEASIBLE, "infeasible", "; ".join(solution.errors) or "no feasible threshold")
    if solution.assignment is None:
        return _fail(EXIT_INFEASIBLE, "infeasible", "no assignment produced")
    if verify_assignment(solution.assignment, instance.system):
        return _fail(EXIT_VIOLATIONS, "constraint_violations", f"solver {solver_name}")
    return EXIT_OK


def cmd_solve(args) -> int:
    try:
        instance = _load_from_args(args)
    except ParseError as e:
        return _fail(EXIT_PARSE, "parse_error", str(e))
    except InfeasibleConstraintsError as e:
        return _fail(EXIT_INFEASIBLE, "infeasible_constraints", str(e))
    errors = instance.validation_errors()
    if errors:
        return _fail(EXIT_VALIDATION, "validation_error", "; ".join(errors))

    t0 = time.perf_counter()
    if args.eta is not None:
        probe = solve_with_threshold(instance, args.eta)
        if not probe.success:
            wall = (time.perf_counter() - t0) * 1000
            sol = Solution(
                centers=probe.centers,
                assignment=None,
                radius=math.inf,
                probed_eta=args.eta,
                probe_count=1,
                guarantee=GUARANTEE_INFEASIBLE,
                swaps_applied=probe.swaps_applied,
                errors=[f"threshold {args.eta} not feasible within k={instance.k}"],
            )
            return _emit_report(args, instance, args.solver, sol, wall)
        a = assign(probe.centers, instance, args.eta)
        sol = Solution(
            centers=probe.centers,
            assignment=a.center_of,
            radius=a.radius,
            probed_eta=args.eta,
            probe_count=1,
            # a single fixed-threshold probe carries no approximation claim
            guarantee=GUARANTEE_BEST_EFFORT,
            swaps_applied=probe.swaps_applied,
        )
    else:
        if args.solver == "lsckc":
            sol = solve(instance, strategy=args.search)
        else:
            sol = run_solver(args.solver, instance)
    wall = (time.perf_counter() - t0) * 1000
    return _emit_report(args, instance, args.solver, sol, wall)


def cmd_gen(args) -> int:
    params = GenParams(
        n=args.n,
        k=args.k,
        dim=args.dim,
        r_plant=args.r_plant,
        separation=args.separation,
        cl_ratio=args.cl_ratio,
        ml_ratio=args.ml_ratio,
        cl_size_range=(args.cl_size[0], args.cl_size[1]),
        ml_size_range=(args.ml_size[0], args.ml_size[1]),
        intersect_repetition=args.intersect_repetition,
        seed=args.seed,
        metric=args.metric,
    )
    try:
        instance = generate(params)
    except GenerationError as e:
        return _fail(EXIT_VALIDATION, "generation_error", str(e))
    save_instance(instance, args.out)
    print(json.dumps({"written": args.out, "n": instance.n, "k": instance.k}))
    return EXIT_OK


def cmd_oracle(args) -> int:
    try:
        instance = _load_from_args(args)
    except ParseError as e:
        return _fail(EXIT_PARSE, "parse_error", str(e))
    except InfeasibleConstraintsError as e:
        return _fail(EXIT_INFEASIBLE, "infeasible_constraints", str(e))
    t0 = time.perf_counter()
    try:
        hit = exact_opt(instance)
    except OracleSizeError as e:
        return _fail(EXIT_VALIDATION, "oracle_size_guard", str(e))
    wall = (time.perf_counter() - t0) * 1000
    if hit is None:
        return _fail(EXIT_INFEASIBLE, "infeasible", "no center set satisfies the constraints")
    radius, centers = hit
    a = assign(centers, instance, radius)
    sol = Solution(
        centers=sorted(centers),
        assignment=a.center_of,
        radius=a.radius,
        probed_eta=radius,
        probe_count=0,
        guarantee="exact",
    )
    return _emit_report(args, instance, "oracle", sol, wall)


def cmd_validate(args) -> int:
    try:
        instance = _load_from_args(args)
    except ParseError as e:
        return _fail(EXIT_PARSE, "parse_error", str(e))
    except InfeasibleConstraintsError as e:
        return _fail(EXIT_INFEASIBLE, "infeasible_constraints", str(e))
    errors = instance.validation_errors()
    digest = {
        "n": instance.n,
        "k": instance.k,
        "dim": instance.dataset.dim,
        "metric": instance.dataset.metric,
        "cl_sets": len(instance.system.cl),
        "ml_sets": len(instance.system.ml),
        "disjoint_cl": instance.system.disjoint_cl,
        "errors": errors,
    }
    print(json.dumps(digest, indent=1))
    return EXIT_OK if not errors else EXIT_VALIDATION


def cmd_bench(args) -> int:
    rows = sweep(
        n=args.n,
        k=args.k,
        dim=args.dim,
        metric=args.metric,
        constraint_pcts=args.ratios,
        repetition_pcts=args.repetitions,
        seeds=args.seeds,
        base_seed=args.seed,
        solvers=args.solvers,
    )
    write_rows(rows, args.out)
    print(json.dumps({"written": args.out, "rows": len(rows)}))
    return EXIT_OK


def _csv_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x != ""]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lsckc", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_input_args(sp):
        sp.add_argument("--instance", help="bundled instance JSON")
        sp.add_argument("--points", help="points CSV (one row per point)")
        sp.add_argument("--constraints", help="constraints file (CL/ML lines)")
        sp.add_argument("--k", type=int, help="center budget")
        sp.add_argument("--metric", default="euclidean", choices=METRICS)

    def add_output_args(sp):
        sp.add_argument("--out", help="report path (stdout when omitted)")
        sp.add_argument("--format", default="json", choices=("json", "csv_row"))
        sp.add_argument("--stable", action="store_true", help="blank wall time for golden files")

    sp = sub.add_parser("solve", help="solve an instance")
    add_input_args(sp)
    add_output_args(sp)
    sp.add_argument("--eta", type=float, default=None, help="probe one fixed threshold")
    sp.add_argument("--search", default="binary", choices=("binary", "linear"))
    sp.add_argument("--solver", default="lsckc", choices=SOLVERS)
    sp.add_argument("--emit-assignment", action="store_true")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("gen", help="generate a planted instance")
    sp.add_argument("--out", required=True)
    sp.add_argument("--n", type=int, default=200)
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--r-plant", type=float, default=1.0)
    sp.add_argument("--separation", type=float, default=4.0)
    sp.add_argument("--cl-ratio", type=float, default=0.06)
    sp.add_argument("--ml-ratio", type=float, default=0.04)
    sp.add_argument("--cl-size", type=int, nargs=2, default=(2, 5), metavar=("MIN", "MAX"))
    sp.add_argument("--ml-size", type=int, nargs=2, default=(2, 3), metavar=("MIN", "MAX"))
    sp.add_argument("--intersect-repetition", type=float, default=0.0)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--metric", default="euclidean", choices=METRICS)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("oracle", help="exact optimum for small instances")
    add_input_args(sp)
    add_output_args(sp)
    sp.add_argument("--emit-assignment", action="store_true")
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("validate", help="load, normalize and report an instance")
    add_input_args(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("bench", help="constraint-ratio / repetition sweeps")
    sp.add_argument("--out", required=True)
    sp.add_argument("--n", type=int, default=1500)
    sp.add_argument("--k", type=int, default=50)
    sp.add_argument("--dim", type=int, default=2)
    sp.add_argument("--metric", default="euclidean", choices=METRICS)
    sp.add_argument("--ratios", type=_csv_floats, default=(2, 4, 6, 8, 10),
                    help="constraint percentages, comma separated")
    sp.add_argument("--repetitions", type=_csv_floats, default=(0,),
                    help="repetition percentages; 0 = disjoint")
    sp.add_argument("--seeds", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--solvers", type=lambda t: t.split(","), default=("lsckc", "greedy"))
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
