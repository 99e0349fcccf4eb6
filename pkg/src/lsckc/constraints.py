"""Cannot-link / must-link constraint systems.

Cannot-link (CL) sets hold points that must land in pairwise distinct
clusters; must-link (ML) sets hold points that must share one cluster. ML
sets behave like a single "big point": the distance from an ML member to a
center is the max over the whole set, so one center serves all of it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .metric import Dataset


class InfeasibleConstraintsError(ValueError):
    """A point is required to both co-locate and separate from another."""


@dataclass(frozen=True)
class CLSet:
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MLSet:
    members: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class ConstraintSystem:
    """Normalized constraint sets plus point -> ML-set lookup."""

    cl: tuple[CLSet, ...]
    ml: tuple[MLSet, ...]
    ml_of: dict[int, int] = field(repr=False)
    disjoint_cl: bool = True

    @property
    def cl_lists(self) -> list[list[int]]:
        return [list(s.members) for s in self.cl]

    @property
    def ml_lists(self) -> list[list[int]]:
        return [list(s.members) for s in self.ml]

    def constrained_points(self) -> list[int]:
        """All CL-constrained point ids, ascending."""
        out: set[int] = set()
        for s in self.cl:
            out.update(s.members)
        return sorted(out)

    def is_empty(self) -> bool:
        return not self.cl and not self.ml


EMPTY_SYSTEM = ConstraintSystem(cl=(), ml=(), ml_of={}, disjoint_cl=True)


def _dedupe(seq: Iterable[int]) -> list[int]:
    seen: set[int] = set()
    out: list[int] = []
    for x in seq:
        x = int(x)
        if x not in seen:
            seen.add(x)
            out.append(x)
    return out


def normalize(
    cl_sets: Sequence[Sequence[int]], ml_sets: Sequence[Sequence[int]]
) -> ConstraintSystem:
    """Build a normalized constraint system from raw id lists.

    Intersecting ML sets are merged to their transitive closure, duplicate
    ids within a set are removed, vacuous singleton sets are dropped, and
    the ``disjoint_cl`` flag is computed. Member order is preserved from the
    input so downstream iteration stays deterministic.

    Raises :class:`InfeasibleConstraintsError` when a CL set contains two
    members of one (merged) ML set.
    """
    raw_ml = [_dedupe(s) for s in ml_sets]
    raw_ml = [s for s in raw_ml if len(s) >= 1]

    # Union-find over ML membership: intersecting sets merge transitively.
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for s in raw_ml:
        for x in s:
            parent.setdefault(x, x)
        for x in s[1:]:
            union(s[0], x)

    # Merged member order: first appearance across the raw sets in input order.
    groups: dict[int, list[int]] = {}
    order: list[int] = []
    for s in raw_ml:
        for x in s:
            r = find(x)
            if r not in groups:
                groups[r] = []
                order.append(r)
            if x not in groups[r]:
                groups[r].append(x)

    merged_ml = [MLSet(tuple(groups[r])) for r in order if len(groups[r]) >= 2]
    ml_of: dict[int, int] = {}
    for idx, s in enumerate(merged_ml):
        for x in s.members:
            ml_of[x] = idx

    norm_cl: list[CLSet] = []
    seen_cl: set[int] = set()
    disjoint = True
    for s in cl_sets:
        members = _dedupe(s)
        if len(members) < 2:
            continue  # every point is implicitly its own singleton CL set
        hit_ml: dict[int, int] = {}
        for x in members:
            if x in seen_cl:
                disjoint = False
            m = ml_of.get(x)
            if m is not None:
                if m in hit_ml:
                    raise InfeasibleConstraintsError(
                        f"points {hit_ml[m]} and {x} must co-locate (ML) "
                        f"but also separate (CL)"
                    )
                hit_ml[m] = x
        seen_cl.update(members)
        norm_cl.append(CLSet(tuple(members)))

    return ConstraintSystem(
        cl=tuple(norm_cl), ml=tuple(merged_ml), ml_of=ml_of, disjoint_cl=disjoint
    )


def validate(system: ConstraintSystem, k: int, n: int) -> list[str]:
    """Collect structural errors; an empty list means the system is usable."""
    errors: list[str] = []
    if k < 1:
        errors.append(f"k must be >= 1, got {k}")
    for i, s in enumerate(system.cl):
        if len(s) > k:
            errors.append(f"CL set {i} exceeds k: size {len(s)} > {k}")
        for x in s.members:
            if not 0 <= x < n:
                errors.append(f"CL set {i}: id {x} out of range for n={n}")
    for i, s in enumerate(system.ml):
        for x in s.members:
            if not 0 <= x < n:
                errors.append(f"ML set {i}: id {x} out of range for n={n}")
    return errors


def effective_distance(p: int, c: int, system: ConstraintSystem, ds: Dataset) -> float:
    """Distance from p to center c, with p's ML set acting as one big point.

    If p belongs to ML set X this is ``max over x in X of d(x, c)`` (one
    center must serve the whole set); otherwise the plain metric distance.
    """
    m = system.ml_of.get(p)
    if m is None:
        return ds.distance(p, c)
    return max(ds.distance(x, c) for x in system.ml[m].members)
