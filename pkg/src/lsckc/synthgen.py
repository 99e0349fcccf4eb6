"""Planted-optimum instance generator.

Anchors are placed on a scaled integer lattice and jittered, which keeps
every pairwise anchor distance at least ``separation * r_plant`` by
construction (no rejection loop, so generation is deterministic and cannot
stall at large k). Each anchor contributes one point exactly at the anchor
and the remaining points scatter inside the metric ball of radius
``r_plant`` around their anchor, so choosing the anchors as centers serves
everything within ``r_plant``: the planted radius upper-bounds the true
discrete optimum.

Cannot-link sets draw their members from pairwise distinct planted
clusters and must-link sets stay inside one cluster, so the planted
clustering satisfies every constraint. In intersected mode a fraction of
already-constrained points is re-injected into other CL sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constraints import normalize
from .instance import Instance
from .metric import Dataset


class GenerationError(ValueError):
    """Parameters that cannot produce a well-formed instance."""


@dataclass
class GenParams:
    n: int = 200
    k: int = 10
    dim: int = 2
    r_plant: float = 1.0
    separation: float = 4.0
    cl_ratio: float = 0.06
    ml_ratio: float = 0.04
    cl_size_range: tuple[int, int] = (2, 5)
    ml_size_range: tuple[int, int] = (2, 3)
    intersect_repetition: float = 0.0
    seed: int = 0
    metric: str = "euclidean"

    def check(self) -> None:
        if self.n < 1 or self.k < 1 or self.dim < 1:
            raise GenerationError("n, k and dim must all be >= 1")
        if self.n < self.k:
            raise GenerationError(f"need n >= k so every cluster is non-empty (n={self.n}, k={self.k})")
        if self.r_plant <= 0:
            raise GenerationError("r_plant must be positive")
        if self.separation < 4:
            raise GenerationError("separation < 4 voids the planted-optimum guarantee")
        if not (0 <= self.cl_ratio <= 1 and 0 <= self.ml_ratio <= 1):
            raise GenerationError("constraint ratios must lie in [0, 1]")
        if not 0 <= self.intersect_repetition <= 1:
            raise GenerationError("intersect_repetition must lie in [0, 1]")
        if self.cl_size_range[0] < 2 or self.cl_size_range[0] > self.cl_size_range[1]:
            raise GenerationError("bad cl_size_range")
        if self.ml_size_range[0] < 2 or self.ml_size_range[0] > self.ml_size_range[1]:
            raise GenerationError("bad ml_size_range")
        if self.cl_ratio > 0 and self.cl_size_range[0] > self.k:
            raise GenerationError("CL sets larger than k are unsatisfiable")


def _ball_sample(rng: np.random.Generator, dim: int, radius: float, metric: str) -> np.ndarray:
    """Uniform draw from the metric ball; rejection from the bounding cube."""
    while True:
        x = rng.uniform(-radius, radius, size=dim)
        if metric == "chebyshev":
            return x
        if metric == "euclidean" and float(np.sqrt(np.dot(x, x))) <= radius:
            return x
        if metric == "manhattan" and float(np.abs(x).sum()) <= radius:
            return x


def _anchor_lattice(params: GenParams, rng: np.random.Generator) -> np.ndarray:
    """k jittered lattice sites with pairwise distance >= separation * r_plant.

    Neighboring sites differ by the lattice pitch in at least one axis, and
    the pitch exceeds the required separation by twice the jitter bound, so
    the spacing survives the jitter under all three supported metrics.
    """
    k, dim, r = params.k, params.dim, params.r_plant
    jitter = r
    pitch = params.separation * r + 2 * jitter + r
    side = max(1, math.ceil(k ** (1.0 / dim)))
    while side**dim < k:
        side += 1
    sites = []
    for flat in range(k):
        rem, coord = flat, []
        for _ in range(dim):
            coord.append(rem % side)
            rem //= side
        sites.append(coord)
    anchors = np.asarray(sites, dtype=np.float64) * pitch
    anchors += rng.uniform(-jitter, jitter, size=anchors.shape)
    return anchors


def generate(params: GenParams) -> Instance:
    """Build a planted instance; identical params and seed give identical bytes."""
    params.check()
    rng = np.random.default_rng(params.seed)
    n, k = params.n, params.k
    anchors = _anchor_lattice(params, rng)

    coords = np.empty((n, params.dim))
    cluster_of = np.empty(n, dtype=np.int64)
    coords[:k] = anchors  # one point exactly at each anchor
    cluster_of[:k] = np.arange(k)
    extra = rng.integers(0, k, size=n - k)
    for i, c in enumerate(extra):
        coords[k + i] = anchors[c] + _ball_sample(rng, params.dim, params.r_plant, params.metric)
        cluster_of[k + i] = c

    cluster_members: list[list[int]] = [[] for _ in range(k)]
    for p in range(n):
        cluster_members[int(cluster_of[p])].append(p)

    cl_budget = int(round(params.cl_ratio * n))
    ml_budget = int(round(params.ml_ratio * n))
    used_cl: set[int] = set()
    used_ml: set[int] = set()
    cl_sets: list[list[int]] = []
    ml_sets: list[list[int]] = []

    def free_in(cluster: int) -> list[int]:
        return [
            p for p in cluster_members[cluster] if p not in used_cl and p not in used_ml
        ]

    # CL sets: one member from each of `size` distinct clusters.
    while cl_budget >= params.cl_size_range[0]:
        size = int(rng.integers(params.cl_size_range[0], params.cl_size_range[1] + 1))
        size = min(size, cl_budget, k)
        open_clusters = [c for c in range(k) if free_in(c)]
        if len(open_clusters) < size:
            break
        chosen = rng.choice(len(open_clusters), size=size, replace=False)
        members = []
        for ci in sorted(int(c) for c in chosen):
            pool = free_in(open_clusters[ci])
            members.append(int(pool[int(rng.integers(0, len(pool)))]))
        used_cl.update(members)
        cl_sets.append(members)
        cl_budget -= size

    # ML sets: inside one cluster; at most one CL-constrained member per set
    # so an ML set never bridges two CL sets.
    attempts = 0
    while ml_budget >= params.ml_size_range[0] and attempts < 20 * k:
        attempts += 1
        size = int(rng.integers(params.ml_size_range[0], params.ml_size_range[1] + 1))
        size = min(size, ml_budget)
        cluster = int(rng.integers(0, k))
        pool = free_in(cluster)
        cl_pool = [
            p for p in cluster_members[cluster] if p in used_cl and p not in used_ml
        ]
        members = []
        take_cl = bool(cl_pool) and rng.random() < 0.5 and len(pool) >= size - 1
        if take_cl:
            members.append(int(cl_pool[int(rng.integers(0, len(cl_pool)))]))
        need = size - len(members)
        if need > len(pool):
            continue
        picks = rng.choice(len(pool), size=need, replace=False)
        members.extend(int(pool[int(i)]) for i in sorted(int(x) for x in picks))
        used_ml.update(members)
        ml_sets.append(members)
        ml_budget -= size

    # Intersected mode: re-inject a fraction of CL points into other CL sets,
    # keeping every set's members in pairwise distinct clusters so the
    # planted clustering stays consistent with the constraints.
    if params.intersect_repetition > 0 and len(cl_sets) >= 2:
        ml_points = {p for s in ml_sets for p in s}
        # re-injecting an ML member would make its ML set bridge two CL sets
        flat = sorted(p for s in cl_sets for p in s if p not in ml_points)
        target = int(math.ceil(params.intersect_repetition * len(flat)))
        injected = 0
        order = rng.permutation(len(flat))
        for oi in order:
            if injected >= target:
                break
            p = int(flat[int(oi)])
            pc = int(cluster_of[p])
            hosts = [
                si
                for si, s in enumerate(cl_sets)
                if p not in s
                and len(s) < params.k
                and all(int(cluster_of[q]) != pc for q in s)
            ]
            if not hosts:
                continue
            cl_sets[int(hosts[int(rng.integers(0, len(hosts)))])].append(p)
            injected += 1
        if injected == 0:
            raise GenerationError(
                "intersected mode could not create any intersection; "
                "increase constraint budget or set sizes"
            )

    ds = Dataset(coords, metric=params.metric)
    system = normalize(cl_sets, ml_sets)
    inst = Instance(dataset=ds, system=system, k=k)

    gaps = []
    for i in range(k):
        for j in range(i + 1, k):
            d = ds.distance(i, j)
            gaps.append(d)
    min_gap = min(gaps) if gaps else math.inf
    if n <= 14:
        from .baselines import exact_opt

        hit = exact_opt(inst)
        if hit is None:
            raise GenerationError("generated instance is unexpectedly infeasible")
        inst.planted_opt = hit[0]
        inst.planted_opt_kind = "exact"
        inst.planted_opt_lower = hit[0]
    else:
        inst.planted_opt = params.r_plant
        inst.planted_opt_kind = "upper_bound"
        inst.planted_opt_lower = max(0.0, min_gap / 2.0 - params.r_plant)
    return inst
