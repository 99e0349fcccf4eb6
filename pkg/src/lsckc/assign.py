"""Materialize a constraint-respecting point-to-center assignment.

The solver only certifies that a center set works; this module produces the
actual clustering and its realized radius. Cost is measured against the
*assigned* center, not the nearest one: constraints can force a point away
from its nearest center, which is the defining difference from
unconstrained k-center conventions.

Assignment rules, in order:

1. a CL-constrained center serves itself (and pins its ML set);
2. each CL set's remaining members follow a maximum matching into the
   centers, at effective (big-point) distances, skipping centers already
   used inside the set; a matched member pins its ML set;
3. an unpinned ML set goes whole to the center minimizing its max member
   distance;
4. unconstrained points go to their nearest center.

Ties always break toward the smallest center id. A point caught in several
CL sets (intersected mode) keeps its first assignment; when that collides
with a later set the violation is reported by :func:`verify` rather than
silently reshuffled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import ConstraintSystem
from .instance import Instance
from .matching import build_threshold_graph, maximum_matching
from .metric import TOL, Dataset


@dataclass
class Assignment:
    center_of: list[int]
    radius: float
    violations: list[tuple[str, int, int]]


class AssignmentError(RuntimeError):
    """Precondition breach: the center set does not cover the instance."""


def _nearest(ds: Dataset, p: int, centers: list[int]) -> int:
    row = ds.distances_from(p)
    best = centers[0]
    for c in centers[1:]:
        if row[c] < row[best]:
            best = c
    return best


def assign(centers_in, instance: Instance, threshold: float) -> Assignment:
    """Deterministic assignment of every point given a feasible center set."""
    ds, system = instance.dataset, instance.system
    centers = sorted(set(int(c) for c in centers_in))
    if not centers:
        raise AssignmentError("cannot assign with an empty center set")
    center_set = set(centers)
    center_of: dict[int, int] = {}
    ml_pin: dict[int, int] = {}  # ML index -> pinned center

    def pin_ml(p: int, c: int) -> None:
        m = system.ml_of.get(p)
        if m is not None and m not in ml_pin:
            ml_pin[m] = c

    # 1. self-served CL members, id order
    for y in system.constrained_points():
        if y in center_set:
            center_of[y] = y
            pin_ml(y, y)

    # ML pins propagate before the matchings so peers in other CL sets are
    # treated as already assigned.
    def settle_ml_pins() -> None:
        for m, c in ml_pin.items():
            for x in system.ml[m].members:
                if x not in center_of:
                    center_of[x] = c

    settle_ml_pins()

    # 2. per CL set, matching-based assignment of the remaining members
    for cl in system.cl:
        used = {center_of[y] for y in cl.members if y in center_of}
        todo = [y for y in cl.members if y not in center_of]
        if not todo:
            continue
        avail = [c for c in centers if c not in set(cl.members) and c not in used]
        g = build_threshold_graph(todo, avail, threshold, system, ds)
        m = maximum_matching(g)
        matched = {g.left[u]: g.right[v] for u, v in m.pairs}
        for y in todo:
            if y in matched:
                c = matched[y]
            else:
                # only reachable on degenerate intersected systems; verify()
                # will report any separation failure
                c = _nearest(ds, y, centers)
            center_of[y] = c
            pin_ml(y, c)
        settle_ml_pins()

    # 3. unpinned ML sets: single best center for the whole set
    for mi, ml in enumerate(system.ml):
        if mi in ml_pin:
            continue
        members = np.asarray(ml.members, dtype=np.intp)
        best_c, best_val = -1, np.inf
        for c in centers:
            val = max(float(ds.distances_from(c)[x]) for x in members)
            if val < best_val:
                best_c, best_val = c, val
        ml_pin[mi] = best_c
        for x in ml.members:
            if x not in center_of:
                center_of[x] = best_c

    # 4. unconstrained points
    for p in range(ds.n):
        if p not in center_of:
            center_of[p] = _nearest(ds, p, centers)

    out = [center_of[p] for p in range(ds.n)]
    radius = clustering_radius(out, ds)
    violations = verify_assignment(out, system)
    if radius > threshold + TOL:
        raise AssignmentError(
            f"assignment radius {radius} exceeds threshold {threshold}; "
            "the center set was not coverage-feasible"
        )
    return Assignment(center_of=out, radius=radius, violations=violations)


def clustering_radius(center_of: list[int], ds: Dataset) -> float:
    """Max distance from any point to its assigned center."""
    return max(ds.distance(p, c) for p, c in enumerate(center_of))


def clustering_cost(a: Assignment, ds: Dataset) -> float:
    return clustering_radius(a.center_of, ds)


def nearest_center_radius(centers, ds: Dataset) -> float:
    """Unconstrained reading of the same center set, for report comparisons."""
    return float(ds.nearest_distances(centers).max())


def verify_assignment(
    center_of: list[int], system: ConstraintSystem
) -> list[tuple[str, int, int]]:
    """All violated constraint pairs; empty means the clustering is valid."""
    out: list[tuple[str, int, int]] = []
    for cl in system.cl:
        ms = list(cl.members)
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if center_of[ms[i]] == center_of[ms[j]]:
                    out.append(("cl", ms[i], ms[j]))
    for ml in system.ml:
        ms = list(ml.members)
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if center_of[ms[i]] != center_of[ms[j]]:
                    out.append(("ml", ms[i], ms[j]))
    return out


def verify(a: Assignment, system: ConstraintSystem) -> list[tuple[str, int, int]]:
    return verify_assignment(a.center_of, system)
