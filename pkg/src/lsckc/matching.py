"""Threshold bipartite graphs between CL sets and centers, and their matchings.

Feasibility of a center set against a CL set Y at bound ``threshold`` is a
matching question: members of Y already chosen as centers serve themselves;
every remaining member needs its own center within the bound, with no two
members sharing one. A center set where this holds for every CL set is
called a dominating matching set (DMS) here.

Matchings are deterministic: left nodes are scanned in input order and
adjacency lists are kept sorted, so ties always resolve the same way.
Plain augmenting paths are used for small sides; Hopcroft-Karp layering
takes over above ``HK_THRESHOLD`` left nodes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .constraints import CLSet, ConstraintSystem, effective_distance
from .metric import TOL, Dataset

HK_THRESHOLD = 64


@dataclass
class ThresholdBipartiteGraph:
    """CL members to serve (left) versus available centers (right)."""

    left: list[int]  # point ids, Y minus the center set
    right: list[int]  # point ids, center set minus Y
    adjacency: list[list[int]]  # per-left sorted right-indices
    threshold: float


@dataclass
class Matching:
    pairs: list[tuple[int, int]]  # (left-index, right-index)

    @property
    def size(self) -> int:
        return len(self.pairs)


def build_threshold_graph(
    cl_set: CLSet | Sequence[int],
    centers: Sequence[int],
    threshold: float,
    system: ConstraintSystem,
    ds: Dataset,
) -> ThresholdBipartiteGraph:
    """Bipartite graph with an edge wherever the effective distance fits.

    Members of the CL set that are already centers are self-served and
    excluded from both sides.
    """
    members = list(cl_set.members) if isinstance(cl_set, CLSet) else list(cl_set)
    member_set = set(members)
    center_set = set(centers)
    left = [y for y in members if y not in center_set]
    right = sorted(c for c in center_set if c not in member_set)
    adjacency: list[list[int]] = []
    for y in left:
        row = [
            j
            for j, c in enumerate(right)
            if effective_distance(y, c, system, ds) <= threshold + TOL
        ]
        adjacency.append(row)
    return ThresholdBipartiteGraph(left=left, right=right, adjacency=adjacency, threshold=threshold)


def _kuhn(adjacency: list[list[int]], n_right: int) -> list[int]:
    """Augmenting-path matching; returns match_left (right index or -1)."""
    match_left = [-1] * len(adjacency)
    match_right = [-1] * n_right

    def try_augment(u: int, visited: list[bool]) -> bool:
        for v in adjacency[u]:
            if visited[v]:
                continue
            visited[v] = True
            if match_right[v] == -1 or try_augment(match_right[v], visited):
                match_left[u] = v
                match_right[v] = u
                return True
        return False

    for u in range(len(adjacency)):
        try_augment(u, [False] * n_right)
    return match_left


def _hopcroft_karp(adjacency: list[list[int]], n_right: int) -> list[int]:
    """Hopcroft-Karp; same deterministic scan order as the plain search."""
    n_left = len(adjacency)
    INF = float("inf")
    match_left = [-1] * n_left
    match_right = [-1] * n_right
    dist = [INF] * n_left

    def bfs() -> bool:
        q: deque[int] = deque()
        for u in range(n_left):
            if match_left[u] == -1:
                dist[u] = 0
                q.append(u)
            else:
                dist[u] = INF
        found = False
        while q:
            u = q.popleft()
            for v in adjacency[u]:
                w = match_right[v]
                if w == -1:
                    found = True
                elif dist[w] is INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adjacency[u]:
            w = match_right[v]
            if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                match_left[u] = v
                match_right[v] = u
                return True
        dist[u] = INF
        return False

    while bfs():
        for u in range(n_left):
            if match_left[u] == -1:
                dfs(u)
    return match_left


def maximum_matching(g: ThresholdBipartiteGraph) -> Matching:
    """Maximum-cardinality matching of the threshold graph."""
    if len(g.left) > HK_THRESHOLD:
        match_left = _hopcroft_karp(g.adjacency, len(g.right))
    else:
        match_left = _kuhn(g.adjacency, len(g.right))
    pairs = [(u, v) for u, v in enumerate(match_left) if v != -1]
    return Matching(pairs=pairs)


def dms_check(
    centers: Sequence[int],
    cl_sets: Sequence[CLSet],
    threshold: float,
    system: ConstraintSystem,
    ds: Dataset,
) -> bool:
    """True iff ``centers`` is a dominating matching set for every CL set.

    For each set Y the matching between the available centers and the
    not-self-served members must saturate Y; any unmatched member would be
    a coverage or separation failure at this bound.
    """
    for cl in cl_sets:
        g = build_threshold_graph(cl, centers, threshold, system, ds)
        if maximum_matching(g).size < len(g.left):
            return False
    return True
