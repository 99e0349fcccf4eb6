"""Solve without knowing the optimal radius: search the candidate-radius grid.

Every achievable radius is a pairwise distance, so the grid of candidate
radii (plus 0 for the degenerate every-point-a-center case) is exact. A
probe at threshold 2r succeeds for every r at or above the true optimum,
which makes the binary strategy sound: it keeps a failing lower index and a
succeeding upper index and narrows until they are adjacent, so the returned
r* never exceeds the optimum and the realized radius is at most twice it.
The linear strategy simply walks the grid upward to the first success; it
probes far more and is kept as a cross-check on small instances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .assign import Assignment, assign
from .instance import Instance
from .solver import ProbeResult, SolveContext

GUARANTEE_TWO_APPROX = "two_approx"
GUARANTEE_BEST_EFFORT = "best_effort"
GUARANTEE_INFEASIBLE = "infeasible"


@dataclass
class Solution:
    centers: list[int]
    assignment: list[int] | None
    radius: float
    probed_eta: float
    probe_count: int
    guarantee: str
    swaps_applied: int = 0
    probe: ProbeResult | None = None
    errors: list[str] = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.guarantee != GUARANTEE_INFEASIBLE


def _infeasible(probe_count: int, errors: list[str] | None = None) -> Solution:
    return Solution(
        centers=[],
        assignment=None,
        radius=math.inf,
        probed_eta=math.inf,
        probe_count=probe_count,
        guarantee=GUARANTEE_INFEASIBLE,
        errors=errors or [],
    )


def radius_grid(instance: Instance) -> list[float]:
    """Candidate radii to probe: 0 plus every pairwise distance."""
    grid = instance.dataset.candidate_radii()
    if not grid or grid[0] > 0.0:
        grid = [0.0] + grid
    return grid


def _finish(instance: Instance, probe: ProbeResult, probe_count: int) -> Solution:
    a: Assignment = assign(probe.centers, instance, probe.threshold)
    guarantee = (
        GUARANTEE_TWO_APPROX if instance.system.disjoint_cl else GUARANTEE_BEST_EFFORT
    )
    if a.violations:
        # never report a silently broken clustering
        return _infeasible(
            probe_count,
            errors=[f"{len(a.violations)} constraint violations in best assignment"],
        )
    return Solution(
        centers=probe.centers,
        assignment=a.center_of,
        radius=a.radius,
        probed_eta=probe.threshold,
        probe_count=probe_count,
        guarantee=guarantee,
        swaps_applied=probe.swaps_applied,
        probe=probe,
    )


def solve(instance: Instance, strategy: str = "binary") -> Solution:
    """Probe thresholds 2r over the candidate grid and realize the best hit.

    Binary keeps the invariant {high succeeds, low fails}; since success
    holds for every r >= the true optimum, the final r* is at most the
    optimum whenever the constraint sets are disjoint, and the realized
    radius is at most 2 * optimum. Returns an infeasible-marked solution
    when validation fails or even the largest radius cannot be served.
    """
    if strategy not in ("binary", "linear"):
        raise ValueError(f"unknown strategy {strategy!r}")
    errors = instance.validation_errors()
    if errors:
        return _infeasible(0, errors=errors)

    ctx = SolveContext(instance)
    grid = radius_grid(instance)
    probes = 0

    if strategy == "linear":
        for r in grid:
            probes += 1
            result = ctx.probe(2.0 * r, fast_fail=True)
            if result.success:
                return _finish(instance, result, probes)
        return _infeasible(probes)

    hi = len(grid) - 1
    probes += 1
    hi_result = ctx.probe(2.0 * grid[hi], fast_fail=True)
    if not hi_result.success:
        return _infeasible(probes)
    lo = -1
    while hi - lo > 1:
        mid = (hi + lo) // 2
        probes += 1
        result = ctx.probe(2.0 * grid[mid], fast_fail=True)
        if result.success:
            hi, hi_result = mid, result
        else:
            lo = mid
    return _finish(instance, hi_result, probes)
