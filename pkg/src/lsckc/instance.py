"""A solvable problem instance: points, constraints, and the center budget."""

from __future__ import annotations

from dataclasses import dataclass

from .constraints import ConstraintSystem, validate
from .metric import Dataset


@dataclass
class Instance:
    dataset: Dataset
    system: ConstraintSystem
    k: int
    # Known optimum on synthetic instances; "exact" when computed by the
    # exact solver, "upper_bound" when it is the generator's planted radius.
    planted_opt: float | None = None
    planted_opt_kind: str | None = None
    planted_opt_lower: float | None = None

    @property
    def n(self) -> int:
        return self.dataset.n

    def validation_errors(self) -> list[str]:
        return validate(self.system, self.k, self.dataset.n)
