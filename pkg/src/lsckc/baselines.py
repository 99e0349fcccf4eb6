"""Ground-truth exact solver for small instances plus comparison baselines.

``exact_opt`` enumerates candidate radii ascending and, per radius, center
subsets of size up to k; the first combination that both passes the
feasibility predicate and realizes a valid assignment is the optimum. It is
deliberately exponential and guarded to small n: its job is to anchor the
approximation-ratio tests.

``greedy_constrained`` is an in-house heuristic stand-in for external
baseline solvers: farthest-first seeding followed by matching-based repair,
with no approximation guarantee.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .assign import AssignmentError, assign
from .constraints import effective_distance
from .driver import GUARANTEE_BEST_EFFORT, Solution, _infeasible
from .instance import Instance
from .matching import build_threshold_graph, maximum_matching
from .metric import TOL, Dataset
from .solver import coverage_feasible

EXACT_MAX_POINTS = 14


class OracleSizeError(ValueError):
    """exact_opt refuses instances beyond its exponential-search guard."""


def _realizable(centers, instance: Instance, r: float) -> bool:
    if not coverage_feasible(centers, instance, r):
        return False
    try:
        a = assign(centers, instance, r)
    except AssignmentError:
        return False
    return not a.violations


def exact_opt(instance: Instance) -> tuple[float, list[int]] | None:
    """Minimum radius and a witness center set, or None when infeasible.

    Scans the radius grid ascending; for each radius enumerates center
    subsets by size then lexicographically, pruning first on plain
    point coverage, which is cheap and necessary.
    """
    n = instance.dataset.n
    if n > EXACT_MAX_POINTS:
        raise OracleSizeError(
            f"exact_opt is limited to n <= {EXACT_MAX_POINTS}, got {n}"
        )
    errors = instance.validation_errors()
    if errors:
        return None
    ds, system = instance.dataset, instance.system
    k = min(instance.k, n)
    grid = instance.dataset.candidate_radii()
    if not grid or grid[0] > 0.0:
        grid = [0.0] + grid

    cache = np.empty((n, n))
    for i in range(n):
        cache[i] = ds.distances_from(i)
    unconstrained = [
        p
        for p in range(n)
        if p not in system.ml_of and all(p not in cl.members for cl in system.cl)
    ]

    subsets = [
        list(c)
        for size in range(1, k + 1)
        for c in itertools.combinations(range(n), size)
    ]
    for r in grid:
        bound = r + TOL
        for centers in subsets:
            cols = np.asarray(centers, dtype=np.intp)
            if unconstrained and cache[np.ix_(unconstrained, cols)].min(axis=1).max() > bound:
                continue
            if _realizable(centers, instance, r):
                return r, centers
    return None


def gonzalez(ds: Dataset, k: int) -> list[int]:
    """Farthest-first traversal from point id 0, ignoring all constraints."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k >= ds.n:
        return list(range(ds.n))
    centers = [0]
    dist = np.array(ds.distances_from(0), copy=True)
    while len(centers) < k:
        nxt = int(np.argmax(dist))  # argmax takes the smallest id on ties
        centers.append(nxt)
        np.minimum(dist, ds.distances_from(nxt), out=dist)
    return centers


def gonzalez_solution(instance: Instance) -> Solution:
    """Gonzalez centers with plain nearest-center assignment."""
    ds = instance.dataset
    centers = gonzalez(ds, instance.k)
    nearest = ds.nearest_distances(centers)
    cols = np.asarray(centers, dtype=np.intp)
    assignment = []
    for p in range(ds.n):
        row = ds.distances_from(p)[cols]
        assignment.append(centers[int(np.argmin(row))])
    return Solution(
        centers=sorted(centers),
        assignment=assignment,
        radius=float(nearest.max()),
        probed_eta=float(nearest.max()),
        probe_count=0,
        guarantee=GUARANTEE_BEST_EFFORT,
    )


def _base_radius(centers, instance: Instance) -> float:
    """Coverage radius ignoring CL sets: nearest for points, single best
    center for each ML set."""
    ds, system = instance.dataset, instance.system
    r = float(ds.nearest_distances(centers).max())
    for ml in system.ml:
        big = min(
            max(ds.distance(x, c) for x in ml.members) for c in centers
        )
        r = max(r, big)
    return r


def greedy_constrained(instance: Instance, max_rounds: int | None = None) -> Solution:
    """Farthest-first seeding plus matching-based repair; best effort only.

    Whenever a CL set cannot be fully matched within the current coverage
    radius, its farthest unmatched member is promoted to a center; if that
    overruns the budget, the center whose removal grows the coverage radius
    least is evicted. The final radius is the smallest grid value at which
    the resulting centers are coverage-feasible.
    """
    errors = instance.validation_errors()
    if errors:
        return _infeasible(0, errors=errors)
    ds, system, k = instance.dataset, instance.system, instance.k
    centers = gonzalez(ds, k)
    if max_rounds is None:
        max_rounds = 3 * k

    for _ in range(max_rounds):
        r_cur = _base_radius(centers, instance)
        promoted_any = False
        for cl in system.cl:
            g = build_threshold_graph(cl, centers, r_cur, system, ds)
            matched = {u for u, _ in maximum_matching(g).pairs}
            unmatched = [y for i, y in enumerate(g.left) if i not in matched]
            if not unmatched:
                continue
            far = max(
                unmatched,
                key=lambda y: (
                    min(effective_distance(y, c, system, ds) for c in centers),
                    -y,
                ),
            )
            centers.append(far)
            promoted_any = True
            if len(centers) > k:
                best_evict, best_r = None, math.inf
                for c in centers:
                    if c == far:
                        continue
                    rest = [x for x in centers if x != c]
                    rr = _base_radius(rest, instance)
                    if rr < best_r:
                        best_evict, best_r = c, rr
                centers.remove(best_evict)
        if not promoted_any:
            break

    centers = sorted(set(centers))
    grid = instance.dataset.candidate_radii()
    if not grid or grid[0] > 0.0:
        grid = [0.0] + grid
    # coverage is monotone in the radius for a fixed center set
    lo, hi = 0, len(grid) - 1
    if not coverage_feasible(centers, instance, grid[hi]):
        return _infeasible(0)
    if coverage_feasible(centers, instance, grid[lo]):
        hi = lo
    while hi - lo > 1:
        mid = (hi + lo) // 2
        if coverage_feasible(centers, instance, grid[mid]):
            hi = mid
        else:
            lo = mid
    r_final = grid[hi]
    a = assign(centers, instance, r_final)
    if a.violations:
        return _infeasible(0, errors=["greedy repair left constraint violations"])
    return Solution(
        centers=centers,
        assignment=a.center_of,
        radius=a.radius,
        probed_eta=r_final,
        probe_count=0,
        guarantee=GUARANTEE_BEST_EFFORT,
    )
