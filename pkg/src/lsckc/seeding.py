"""Threshold-based center seeding that honors must-link sets.

A single pass over the points in id order. An unconstrained point seeds
itself when no current center is within the bound. An ML member seeds
itself when no single current center serves its whole set within the bound
(the big-point criterion: min over centers of the max member distance).
Once any member of an ML set is a center, the set is served by that member
within the set diameter, so each set triggers at most once whenever the
bound is at least the diameter.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .constraints import MLSet
from .metric import TOL, Dataset


def seed_centers(
    ds: Dataset,
    ml_sets: Sequence[MLSet],
    threshold: float,
    initial: Sequence[int] = (),
) -> list[int]:
    """One greedy pass adding centers until coverage at ``threshold`` holds.

    ``initial`` is empty in the grand-algorithm pipeline (CL sets are
    ignored at this stage); the standalone variant may pass the largest CL
    set. Returns the center ids in the order they were added.
    """
    n = ds.n
    centers: list[int] = []
    # min over current centers of d(point, center), maintained incrementally
    dist_to_c = np.full(n, math.inf)
    # per ML set: min over current centers of (max member distance)
    ml_big = [math.inf] * len(ml_sets)
    ml_members = [np.asarray(s.members, dtype=np.intp) for s in ml_sets]
    ml_of: dict[int, int] = {}
    for j, s in enumerate(ml_sets):
        for x in s.members:
            ml_of[x] = j

    def add_center(c: int) -> None:
        centers.append(c)
        np.minimum(dist_to_c, ds.distances_from(c), out=dist_to_c)
        row = ds.distances_from(c)
        for j, idx in enumerate(ml_members):
            big = float(row[idx].max())
            if big < ml_big[j]:
                ml_big[j] = big

    for c in initial:
        add_center(int(c))

    bound = threshold + TOL
    for p in range(n):
        j = ml_of.get(p)
        if j is None:
            if dist_to_c[p] > bound:
                add_center(p)
        elif ml_big[j] > bound:
            add_center(p)
    return centers
