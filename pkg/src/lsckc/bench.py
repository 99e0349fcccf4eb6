"""Benchmark sweeps over constraint ratios and repetition ratios.

Each cell generates a planted instance, runs the requested solvers, and
emits one CSV row per (instance, solver) with the realized radius and the
ratio against the planted optimum. Cells are independent and fully seeded,
so rows are deterministic given the base seed.
"""

from __future__ import annotations

import time
from pathlib import Path
from typing import Sequence

from .assign import verify_assignment
from .baselines import gonzalez_solution, greedy_constrained
from .driver import solve
from .instance import Instance
from .synthgen import GenParams, generate

BENCH_COLUMNS = [
    "mode",
    "constraint_pct",
    "repetition_pct",
    "seed",
    "solver",
    "n",
    "k",
    "guarantee",
    "radius",
    "planted_opt",
    "ratio",
    "probe_count",
    "swaps_applied",
    "violations",
    "wall_time_ms",
]

SOLVERS = ("lsckc", "greedy", "gonzalez")


def run_solver(name: str, instance: Instance):
    if name == "lsckc":
        return solve(instance, strategy="binary")
    if name == "greedy":
        return greedy_constrained(instance)
    if name == "gonzalez":
        return gonzalez_solution(instance)
    raise ValueError(f"unknown solver {name!r}")


def _cell_rows(
    instance: Instance,
    solvers: Sequence[str],
    base: dict,
) -> list[dict]:
    rows = []
    for name in solvers:
        t0 = time.perf_counter()
        sol = run_solver(name, instance)
        wall_ms = (time.perf_counter() - t0) * 1000.0
        violations = (
            len(verify_assignment(sol.assignment, instance.system))
            if sol.assignment is not None
            else None
        )
        ratio = None
        if sol.assignment is not None and instance.planted_opt:
            ratio = sol.radius / instance.planted_opt
        rows.append(
            dict(
                base,
                solver=name,
                guarantee=sol.guarantee,
                radius=sol.radius if sol.assignment is not None else None,
                planted_opt=instance.planted_opt,
                ratio=ratio,
                probe_count=sol.probe_count,
                swaps_applied=sol.swaps_applied,
                violations=violations,
                wall_time_ms=wall_ms,
            )
        )
    return rows


def sweep(
    n: int = 1500,
    k: int = 50,
    dim: int = 2,
    metric: str = "euclidean",
    constraint_pcts: Sequence[float] = (2, 4, 6, 8, 10),
    repetition_pcts: Sequence[float] = (0,),
    seeds: int = 20,
    base_seed: int = 0,
    solvers: Sequence[str] = ("lsckc", "greedy"),
    r_plant: float = 1.0,
) -> list[dict]:
    """Generate and solve the full (constraint pct, repetition pct, seed) grid.

    Repetition 0 is disjoint mode; positive repetition re-injects that
    fraction of CL-constrained points into other CL sets.
    """
    rows: list[dict] = []
    for ci, pct in enumerate(constraint_pcts):
        for ri, rep in enumerate(repetition_pcts):
            for s in range(seeds):
                seed = base_seed + 100_000 * ci + 1_000 * ri + s
                params = GenParams(
                    n=n,
                    k=k,
                    dim=dim,
                    metric=metric,
                    r_plant=r_plant,
                    cl_ratio=pct / 200.0,  # constrained points split evenly
                    ml_ratio=pct / 200.0,  # between CL and ML sets
                    intersect_repetition=rep / 100.0,
                    seed=seed,
                )
                instance = generate(params)
                base = dict(
                    mode="disjoint" if rep == 0 else "intersected",
                    constraint_pct=pct,
                    repetition_pct=rep,
                    seed=seed,
                    n=n,
                    k=k,
                )
                rows.extend(_cell_rows(instance, solvers, base))
    return rows


def write_rows(rows: list[dict], path: str | Path) -> None:
    lines = ["# " + ",".join(BENCH_COLUMNS)]
    for row in rows:
        cells = []
        for col in BENCH_COLUMNS:
            v = row.get(col)
            if v is None:
                cells.append("")
            elif isinstance(v, float):
                cells.append(f"{v:.12g}")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n")
