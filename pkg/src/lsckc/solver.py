"""Grand-algorithm pipeline for one threshold probe.

Stage 1(a) seeds centers for must-link / unconstrained coverage, stage 1(b)
adds candidate centers until every cannot-link set is matchable, stage 2
shrinks the stage-1(b) pool by enhanced single swaps (add one point from
the CL-constrained points, drop two pool centers) until none is feasible.
A probe succeeds when the final center count fits the budget k and the
whole solution stays coverage-feasible at the probed threshold.

The swap scan runs on a per-probe workspace (CSR adjacency over candidate
columns) through :mod:`lsckc.kernels`; every public operation here is also
usable standalone on plain id lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .constraints import CLSet, ConstraintSystem
from .instance import Instance
from .matching import build_threshold_graph, dms_check, maximum_matching
from .metric import TOL, Dataset
from .seeding import seed_centers


@dataclass(frozen=True)
class SwapCandidate:
    """Enhanced single swap: add point p, drop pool centers u and v.

    ``p`` may equal ``u`` or ``v``; the swap then degenerates to removing
    the other center. The applied center set is ``(C - {u, v}) | {p}``.
    """

    p: int
    u: int
    v: int


@dataclass
class ProbeResult:
    """Outcome of running the full pipeline at one threshold."""

    threshold: float
    ml_stage_centers: tuple[int, ...]
    cl_stage_centers: tuple[int, ...]
    success: bool
    swaps_applied: int
    audit: tuple[SwapCandidate, ...] = ()
    # False when the probe was short-circuited after stage 1(a) because the
    # seed count alone already exceeded k (stage 1(b)/2 skipped).
    completed: bool = True

    @property
    def centers(self) -> list[int]:
        return sorted(set(self.ml_stage_centers) | set(self.cl_stage_centers))


def _effective_rows(
    row_ids: Sequence[int], col_ids: Sequence[int], system: ConstraintSystem, ds: Dataset
) -> np.ndarray:
    """Effective-distance matrix rows (CL members) by columns (centers)."""
    cols = np.asarray(col_ids, dtype=np.intp)
    out = np.empty((len(row_ids), len(cols)))
    for i, y in enumerate(row_ids):
        m = system.ml_of.get(y)
        if m is None:
            out[i] = ds.distances_from(y)[cols]
        else:
            members = system.ml[m].members
            out[i] = np.max([ds.distances_from(x)[cols] for x in members], axis=0)
    return out


class _SwapWorkspace:
    """Kernel-ready view of the CL sets against a fixed candidate column set.

    Candidate columns are the fixed centers plus every CL-constrained point,
    which is stable across local-search iterations (swaps only move pool
    membership inside this set).
    """

    def __init__(
        self,
        cl_sets: Sequence[CLSet],
        system: ConstraintSystem,
        ds: Dataset,
        threshold: float,
        fixed: Sequence[int],
        pool: Sequence[int],
        eff_full: np.ndarray | None = None,
        vy_ids: Sequence[int] | None = None,
    ):
        if vy_ids is None:
            vy: set[int] = set()
            for s in cl_sets:
                vy.update(s.members)
            vy_ids = sorted(vy)
        self.vy_ids = list(vy_ids)
        self.cand_ids = sorted(set(fixed) | set(pool) | set(self.vy_ids))
        self.row_of = {y: r for r, y in enumerate(self.vy_ids)}
        self.col_of = {c: i for i, c in enumerate(self.cand_ids)}
        n_rows, n_cand = len(self.vy_ids), len(self.cand_ids)

        if eff_full is not None:
            eff = eff_full[:, np.asarray(self.cand_ids, dtype=np.intp)]
        else:
            eff = _effective_rows(self.vy_ids, self.cand_ids, system, ds)
        ok = eff <= threshold + TOL
        rr, cc = np.nonzero(ok)
        self.adj_off = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum(np.bincount(rr, minlength=n_rows), out=self.adj_off[1:])
        self.adj_cols = cc.astype(np.int64)

        set_rows_flat: list[int] = []
        set_off = [0]
        member = np.zeros((len(cl_sets), n_rows), dtype=np.uint8)
        row_sets: list[list[int]] = [[] for _ in range(n_rows)]
        for s, cl in enumerate(cl_sets):
            for y in cl.members:
                r = self.row_of[y]
                set_rows_flat.append(r)
                member[s, r] = 1
                row_sets[r].append(s)
            set_off.append(len(set_rows_flat))
        self.set_off = np.asarray(set_off, dtype=np.int64)
        self.set_rows = np.asarray(set_rows_flat, dtype=np.int64)
        self.member = member
        self.row_sets_off = np.zeros(n_rows + 1, dtype=np.int64)
        np.cumsum([len(x) for x in row_sets], out=self.row_sets_off[1:])
        self.row_sets = np.asarray(
            [s for lst in row_sets for s in lst], dtype=np.int64
        )
        self.row_col = np.asarray(
            [self.col_of[y] for y in self.vy_ids], dtype=np.int64
        )
        self.col_row = np.full(n_cand, -1, dtype=np.int64)
        for r, y in enumerate(self.vy_ids):
            self.col_row[self.col_of[y]] = r

        self.fixed_mask = np.zeros(n_cand, dtype=np.uint8)
        for c in fixed:
            self.fixed_mask[self.col_of[c]] = 1

    def _pool_cols(self, pool: Sequence[int]) -> np.ndarray:
        return np.asarray(sorted(self.col_of[c] for c in pool), dtype=np.int64)

    def scan(self, pool: Sequence[int]) -> SwapCandidate | None:
        pool_cols = self._pool_cols(pool)
        hit = kernels.find_swap(
            self.adj_off,
            self.adj_cols,
            self.set_off,
            self.set_rows,
            self.row_sets_off,
            self.row_sets,
            self.member,
            self.row_col,
            self.col_row,
            self.fixed_mask,
            pool_cols,
        )
        if hit is None:
            return None
        p_row, i, j = hit
        return SwapCandidate(
            p=self.vy_ids[p_row],
            u=self.cand_ids[pool_cols[i]],
            v=self.cand_ids[pool_cols[j]],
        )

    def saturated(self, centers: Sequence[int]) -> bool:
        mask = np.zeros(len(self.cand_ids), dtype=np.uint8)
        for c in centers:
            i = self.col_of.get(c)
            if i is not None:
                mask[i] = 1
        return bool(
            kernels.dms_saturated(
                self.adj_off,
                self.adj_cols,
                self.set_off,
                self.set_rows,
                self.member,
                self.row_col,
                mask,
            )
        )


def cl_candidate_centers(
    c1: Sequence[int],
    cl_sets: Sequence[CLSet],
    system: ConstraintSystem,
    threshold: float,
    ds: Dataset,
) -> list[int]:
    """Stage 1(b): grow the center set until every CL set is matchable.

    Iterates the CL sets in input order against the growing center set;
    every member a maximum matching leaves unserved becomes a center
    itself. Returns only the added centers, in the order they were added.
    """
    centers = list(c1)
    have = set(centers)
    added: list[int] = []
    for cl in cl_sets:
        g = build_threshold_graph(cl, centers, threshold, system, ds)
        matched_left = {u for u, _ in maximum_matching(g).pairs}
        for idx, y in enumerate(g.left):
            if idx not in matched_left:
                centers.append(y)
                have.add(y)
                added.append(y)
    return added


def find_enhanced_swap(
    fixed: Sequence[int],
    pool: Sequence[int],
    cl_sets: Sequence[CLSet],
    system: ConstraintSystem,
    threshold: float,
    ds: Dataset,
) -> SwapCandidate | None:
    """First feasible enhanced single swap in deterministic scan order.

    Scans p over the CL-constrained points in id order, then pairs (u, v)
    from the pool in lexicographic id order; returns the first triple for
    which ``(fixed | pool | {p}) - ({u, v} - {p})`` still passes the DMS
    check, or None when the pool is single-swap free.
    """
    ws = _SwapWorkspace(cl_sets, system, ds, threshold, fixed, pool)
    return ws.scan(pool)


def apply_swap(pool: Sequence[int], swap: SwapCandidate) -> list[int]:
    """Pool after the swap: drop u and v, add p. Strictly smaller."""
    out = set(pool)
    out.discard(swap.u)
    out.discard(swap.v)
    out.add(swap.p)
    return sorted(out)


def local_search_with_audit(
    fixed: Sequence[int],
    pool: Sequence[int],
    cl_sets: Sequence[CLSet],
    system: ConstraintSystem,
    threshold: float,
    ds: Dataset,
) -> tuple[list[int], list[SwapCandidate]]:
    """Apply enhanced single swaps until the pool is single-swap free."""
    ws = _SwapWorkspace(cl_sets, system, ds, threshold, fixed, pool)
    cur = sorted(set(pool))
    audit: list[SwapCandidate] = []
    while True:
        swap = ws.scan(cur)
        if swap is None:
            return cur, audit
        cur = apply_swap(cur, swap)
        audit.append(swap)


def local_search(
    fixed: Sequence[int],
    pool: Sequence[int],
    cl_sets: Sequence[CLSet],
    system: ConstraintSystem,
    threshold: float,
    ds: Dataset,
) -> list[int]:
    final, _ = local_search_with_audit(fixed, pool, cl_sets, system, threshold, ds)
    return final


def coverage_feasible(centers: Sequence[int], instance: Instance, threshold: float) -> bool:
    """Whole-solution feasibility of a center set at a threshold.

    Four conditions: every unconstrained point within the bound of some
    center; every ML set servable by a single center (min over centers of
    the max member distance); every ML set containing a CL-constrained
    center y servable by y itself (such a y self-serves in the matching
    view, so its whole ML set must ride with it); and the DMS check for
    every CL set.
    """
    ds, system = instance.dataset, instance.system
    centers = sorted(set(centers))
    if not centers:
        return ds.n == 0
    bound = threshold + TOL
    constrained = set(system.constrained_points())
    ml_points = set(system.ml_of)
    nearest = ds.nearest_distances(centers)
    for p in range(ds.n):
        if p in constrained or p in ml_points:
            continue
        if nearest[p] > bound:
            return False
    for ml in system.ml:
        big = min(
            max(ds.distance(x, c) for x in ml.members) for c in centers
        )
        if big > bound:
            return False
    for c in centers:
        if c in constrained and c in system.ml_of:
            members = system.ml[system.ml_of[c]].members
            if max(ds.distance(x, c) for x in members) > bound:
                return False
    return dms_check(centers, system.cl, threshold, system, ds)


class SolveContext:
    """Per-instance probe engine: shared effective distances across probes."""

    def __init__(self, instance: Instance):
        self.instance = instance
        ds, system = instance.dataset, instance.system
        self.vy_ids = system.constrained_points()
        self.eff_full: np.ndarray | None = None
        if self.vy_ids:
            self.eff_full = _effective_rows(self.vy_ids, range(ds.n), system, ds)
        # per ML set: max over members of the distance row (so the big-point
        # serve condition is a column min over the centers)
        self.ml_big_rows: np.ndarray | None = None
        if system.ml:
            self.ml_big_rows = np.stack(
                [
                    np.max([ds.distances_from(x) for x in ml.members], axis=0)
                    for ml in system.ml
                ]
            )

    def _stage1b(self, c1: Sequence[int], threshold: float) -> list[int]:
        """Stage 1(b) on the shared effective-distance matrix."""
        instance = self.instance
        system = instance.system
        assert self.eff_full is not None
        row_of = {y: r for r, y in enumerate(self.vy_ids)}
        centers = list(c1)
        center_set = set(centers)
        added: list[int] = []
        bound = threshold + TOL
        for cl in system.cl:
            members = set(cl.members)
            left = [y for y in cl.members if y not in center_set]
            right = sorted(c for c in center_set if c not in members)
            right_idx = np.asarray(right, dtype=np.intp)
            adjacency = []
            for y in left:
                row = self.eff_full[row_of[y], right_idx] <= bound
                adjacency.append(np.nonzero(row)[0].tolist())
            match_right: dict[int, int] = {}
            match_left = [-1] * len(left)

            def augment(u: int, visited: set[int]) -> bool:
                for v in adjacency[u]:
                    if v in visited:
                        continue
                    visited.add(v)
                    w = match_right.get(v, -1)
                    if w == -1 or augment(w, visited):
                        match_right[v] = u
                        match_left[u] = v
                        return True
                return False

            for u in range(len(left)):
                augment(u, set())
            for u, y in enumerate(left):
                if match_left[u] == -1:
                    centers.append(y)
                    center_set.add(y)
                    added.append(y)
        return added

    def _coverage_after_stages(
        self, centers: Sequence[int], ws: _SwapWorkspace | None, threshold: float
    ) -> bool:
        """Feasibility given that stage 1(a) established point coverage.

        Seeding guarantees every unconstrained point is within the bound of
        a stage-1(a) center and those are never removed, so what remains:
        each ML set needs one center serving it whole (seeding adds members
        while that fails but cannot force it below the optimum), a
        CL-constrained ML center must serve its own set, and the DMS check.
        """
        system = self.instance.system
        bound = threshold + TOL
        if self.ml_big_rows is not None:
            cols = np.asarray(centers, dtype=np.intp)
            if float(self.ml_big_rows[:, cols].min(axis=1).max()) > bound:
                return False
        if ws is None:
            return True
        for c in centers:
            r = ws.row_of.get(c)
            if r is not None and c in system.ml_of:
                if self.eff_full[r, c] > bound:
                    return False
        return ws.saturated(centers)

    def probe(self, threshold: float, fast_fail: bool = False) -> ProbeResult:
        """Run the full pipeline at one threshold."""
        instance = self.instance
        ds, system, k = instance.dataset, instance.system, instance.k
        c1 = seed_centers(ds, system.ml, threshold)
        if fast_fail and len(c1) > k:
            # Stage 2 never shrinks the stage-1(a) centers, so the probe
            # cannot succeed; skip the CL stages.
            return ProbeResult(
                threshold=threshold,
                ml_stage_centers=tuple(c1),
                cl_stage_centers=(),
                success=False,
                swaps_applied=0,
                completed=False,
            )
        if not system.cl:
            centers = sorted(set(c1))
            success = len(centers) <= k and self._coverage_after_stages(
                centers, None, threshold
            )
            return ProbeResult(
                threshold=threshold,
                ml_stage_centers=tuple(c1),
                cl_stage_centers=(),
                success=success,
                swaps_applied=0,
            )
        c2_initial = self._stage1b(c1, threshold)
        ws = _SwapWorkspace(
            system.cl,
            system,
            ds,
            threshold,
            fixed=c1,
            pool=c2_initial,
            eff_full=self.eff_full,
            vy_ids=self.vy_ids,
        )
        pool = sorted(set(c2_initial))
        audit: list[SwapCandidate] = []
        while True:
            swap = ws.scan(pool)
            if swap is None:
                break
            pool = apply_swap(pool, swap)
            audit.append(swap)
        centers = sorted(set(c1) | set(pool))
        success = len(centers) <= k and self._coverage_after_stages(centers, ws, threshold)
        return ProbeResult(
            threshold=threshold,
            ml_stage_centers=tuple(c1),
            cl_stage_centers=tuple(pool),
            success=success,
            swaps_applied=len(audit),
            audit=tuple(audit),
        )


def solve_with_threshold(
    instance: Instance, threshold: float, fast_fail: bool = False
) -> ProbeResult:
    """Seed, cover the CL sets, locally shrink, and judge one threshold."""
    return SolveContext(instance).probe(threshold, fast_fail=fast_fail)
