"""Shared corpus builders and independent brute-force oracles for tests.

The brute-force routines here deliberately avoid the library's matching and
swap machinery so they can serve as independent cross-checks.
"""

from __future__ import annotations

import numpy as np

from lsckc import Dataset, Instance, normalize
from lsckc.matching import dms_check


def random_small_instance(seed: int) -> Instance:
    """Seeded random instance: n in 6..12, k in 2..4, dim in 1..3,
    disjoint CL sets of size <= k, ML sets of size <= 3 touching at most
    one CL point each."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(6, 13))
    dim = int(rng.integers(1, 4))
    k = int(rng.integers(2, 5))
    metric = ["euclidean", "manhattan", "chebyshev"][seed % 3]
    coords = rng.uniform(0, 10, size=(n, dim))
    ds = Dataset(coords, metric=metric)

    ids = list(rng.permutation(n))
    cl_sets = []
    for _ in range(int(rng.integers(0, 3))):
        size = int(rng.integers(2, k + 1))
        if len(ids) < size:
            break
        cl_sets.append([int(ids.pop()) for _ in range(size)])
    ml_sets = []
    cl_flat = [p for s in cl_sets for p in s]
    for _ in range(int(rng.integers(0, 3))):
        size = int(rng.integers(2, 4))
        members = []
        if cl_flat and rng.random() < 0.4:
            members.append(cl_flat.pop())
            size -= 1
        if len(ids) < size:
            break
        members.extend(int(ids.pop()) for _ in range(size))
        if len(members) >= 2:
            ml_sets.append(members)
    return Instance(dataset=ds, system=normalize(cl_sets, ml_sets), k=k)


def brute_matching_max(adjacency: list[list[int]]) -> int:
    """Exhaustive maximum matching size by recursion over left nodes."""

    def go(i: int, used: frozenset[int]) -> int:
        if i == len(adjacency):
            return 0
        best = go(i + 1, used)  # leave node i unmatched
        for v in adjacency[i]:
            if v not in used:
                best = max(best, 1 + go(i + 1, used | {v}))
        return best

    return go(0, frozenset())


def brute_force_swap(fixed, pool, instance: Instance, threshold: float):
    """Exhaustive enhanced-swap search straight from the definition."""
    system, ds = instance.system, instance.dataset
    vy = system.constrained_points()
    pool = sorted(pool)
    for p in vy:
        for i in range(len(pool)):
            for j in range(i + 1, len(pool)):
                u, v = pool[i], pool[j]
                centers = (set(fixed) | set(pool) | {p}) - ({u, v} - {p})
                if dms_check(sorted(centers), system.cl, threshold, system, ds):
                    return (p, u, v)
    return None


def random_bipartite(rng: np.random.Generator) -> list[list[int]]:
    n_left = int(rng.integers(0, 8))
    n_right = int(rng.integers(0, 8))
    density = rng.uniform(0.1, 0.9)
    return [
        sorted(int(v) for v in range(n_right) if rng.random() < density)
        for _ in range(n_left)
    ]
