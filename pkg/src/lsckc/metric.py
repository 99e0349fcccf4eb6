"""Point storage, metric evaluation, cached pairwise distances, candidate radii.

A :class:`Dataset` owns the point coordinates and the metric. All distance
queries go through it; for small datasets the full pairwise table is built
eagerly so repeated queries are table lookups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial.distance import cdist

METRICS = ("euclidean", "manhattan", "chebyshev")

# scipy's names for our metric identifiers
_CDIST_NAME = {"euclidean": "euclidean", "manhattan": "cityblock", "chebyshev": "chebyshev"}

# Threshold comparisons use <= with this absolute slack so metric roundoff
# cannot flip edge/coverage decisions.
TOL = 1e-12

# Eager n x n cache limit. 8192^2 float64 is 512 MB; beyond that distances
# are computed on demand.
CACHE_MAX_POINTS = 8192


class InputError(ValueError):
    """Bad ids, malformed coordinates, or an unknown metric."""


@dataclass(frozen=True)
class Point:
    """A dataset point; ``id`` equals its position in the dataset."""

    id: int
    coords: tuple[float, ...]


class Dataset:
    """Immutable point collection with a fixed metric.

    Point ids are the single source of identity: distinct points may share
    coordinates (distance 0 between distinct ids is legal).
    """

    def __init__(
        self,
        coords: Sequence[Sequence[float]],
        metric: str = "euclidean",
        cache: bool | None = None,
    ):
        if metric not in METRICS:
            raise InputError(f"unknown metric {metric!r}; expected one of {METRICS}")
        arr = np.asarray(coords, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError("coords must be a non-empty list of equal-length coordinate rows")
        if not np.all(np.isfinite(arr)):
            raise InputError("coordinates must be finite")
        self._coords = arr
        self._coords.setflags(write=False)
        self.metric = metric
        self._cache: np.ndarray | None = None
        if cache is None:
            cache = self.n <= CACHE_MAX_POINTS
        if cache:
            self._cache = cdist(arr, arr, metric=_CDIST_NAME[metric])
            # cdist is numerically symmetric for these metrics, but enforce it
            # bit-for-bit so cached lookups never depend on argument order.
            self._cache = np.minimum(self._cache, self._cache.T)
            np.fill_diagonal(self._cache, 0.0)
            self._cache.setflags(write=False)

    @property
    def n(self) -> int:
        return self._coords.shape[0]

    @property
    def dim(self) -> int:
        return self._coords.shape[1]

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def points(self) -> list[Point]:
        return [Point(i, tuple(row)) for i, row in enumerate(self._coords)]

    def _check_id(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise InputError(f"point id {i} out of range for n={self.n}")

    def distance(self, a: int, b: int) -> float:
        """Metric distance between two point ids."""
        self._check_id(a)
        self._check_id(b)
        if a == b:
            return 0.0
        if self._cache is not None:
            return float(self._cache[a, b])
        # same cdist kernel as the cache path, so cached and on-demand
        # values agree bit-for-bit; order the ids to keep it symmetric
        lo, hi = (a, b) if a < b else (b, a)
        return float(
            cdist(
                self._coords[lo : lo + 1],
                self._coords[hi : hi + 1],
                metric=_CDIST_NAME[self.metric],
            )[0, 0]
        )

    def distances_from(self, a: int) -> np.ndarray:
        """Vector of distances from point ``a`` to every point (read-only)."""
        self._check_id(a)
        if self._cache is not None:
            return self._cache[a]
        row = cdist(self._coords[a : a + 1], self._coords, metric=_CDIST_NAME[self.metric])[0]
        row[a] = 0.0
        return row

    def nearest_distances(self, centers: Sequence[int]) -> np.ndarray:
        """Per-point min distance to any of ``centers`` (vectorized)."""
        cols = np.asarray(sorted(set(int(c) for c in centers)), dtype=np.intp)
        for c in cols:
            self._check_id(int(c))
        if cols.size == 0:
            return np.full(self.n, math.inf)
        if self._cache is not None:
            return self._cache[:, cols].min(axis=1)
        out = np.full(self.n, math.inf)
        for c in cols:
            np.minimum(out, self.distances_from(int(c)), out=out)
        return out

    def dist_to_set(self, p: int, centers: Sequence[int]) -> float:
        """min over c in ``centers`` of distance(p, c); +inf for an empty set."""
        self._check_id(p)
        if len(centers) == 0:
            return math.inf
        best = math.inf
        for c in centers:
            d = self.distance(p, c)
            if d < best:
                best = d
        return best

    def candidate_radii(self) -> list[float]:
        """All distinct pairwise distances, ascending.

        The optimal clustering radius is always realized by some point pair,
        so this is the exact search grid for threshold probing. Includes 0
        exactly when two distinct points share coordinates; a single-point
        dataset yields an empty list.
        """
        if self.n < 2:
            return []
        if self._cache is not None:
            iu = np.triu_indices(self.n, k=1)
            vals = self._cache[iu]
        else:
            chunks = []
            for i in range(self.n - 1):
                row = cdist(
                    self._coords[i : i + 1], self._coords[i + 1 :], metric=_CDIST_NAME[self.metric]
                )[0]
                chunks.append(row)
            vals = np.concatenate(chunks)
        return [float(v) for v in np.unique(vals)]


# Module-level conveniences mirroring the operation surface.


def distance(a: int, b: int, ds: Dataset) -> float:
    return ds.distance(a, b)


def dist_to_set(p: int, centers: Sequence[int], ds: Dataset) -> float:
    return ds.dist_to_set(p, centers)


def candidate_radii(ds: Dataset) -> list[float]:
    return ds.candidate_radii()
