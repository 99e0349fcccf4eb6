"""Instance and constraint file formats, and solver reports.

Three normative formats:

* points CSV: one row per point, real coordinates, ids implicit from row
  order; a single header row is auto-detected and skipped;
* constraints text: lines ``CL i1 i2 ...`` / ``ML i1 i2 ...``, ``#``
  comments and blank lines ignored;
* bundled instance JSON: ``{"points": ..., "cl": ..., "ml": ..., "k": ...,
  "metric": ..., "planted_opt": ...}``.

All numeric output is printed with 12 significant digits so golden files
are stable across runs.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

from .constraints import normalize
from .instance import Instance
from .metric import METRICS, Dataset


class ParseError(ValueError):
    """Malformed input file; message carries path and line number."""


def fmt12(x: float | None) -> float | None:
    """Round-trip a float through 12 significant digits."""
    if x is None:
        return None
    if math.isinf(x):
        return x
    return float(f"{x:.12g}")


def load_points_csv(path: str | Path) -> list[list[float]]:
    path = Path(path)
    rows: list[list[float]] = []
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        for lineno, row in enumerate(reader, start=1):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            try:
                rows.append([float(c) for c in cells])
            except ValueError:
                if lineno == 1 and not rows:
                    continue  # header row
                raise ParseError(f"{path}:{lineno}: expected numeric coordinates, got {row!r}")
    if not rows:
        raise ParseError(f"{path}: no points found")
    width = len(rows[0])
    for i, r in enumerate(rows):
        if len(r) != width:
            raise ParseError(f"{path}: row {i + 1} has {len(r)} coordinates, expected {width}")
    return rows


def load_constraints_file(
    path: str | Path, n: int | None = None
) -> tuple[list[list[int]], list[list[int]]]:
    """Parse CL/ML lines; when n is given, range-check ids at their line."""
    path = Path(path)
    cl: list[list[int]] = []
    ml: list[list[int]] = []
    with path.open() as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            kind = parts[0].upper()
            if kind not in ("CL", "ML"):
                raise ParseError(f"{path}:{lineno}: expected CL or ML, got {parts[0]!r}")
            try:
                ids = [int(p) for p in parts[1:]]
            except ValueError:
                raise ParseError(f"{path}:{lineno}: non-integer point id")
            if not ids:
                raise ParseError(f"{path}:{lineno}: empty constraint set")
            if n is not None:
                for i in ids:
                    if not 0 <= i < n:
                        raise ParseError(
                            f"{path}:{lineno}: id {i} out of range for n={n}"
                        )
            (cl if kind == "CL" else ml).append(ids)
    return cl, ml


def instance_to_dict(instance: Instance) -> dict[str, Any]:
    ds = instance.dataset
    return {
        "points": [[fmt12(v) for v in row] for row in ds.coords.tolist()],
        "cl": instance.system.cl_lists,
        "ml": instance.system.ml_lists,
        "k": instance.k,
        "metric": ds.metric,
        "planted_opt": fmt12(instance.planted_opt),
        "planted_opt_kind": instance.planted_opt_kind,
        "planted_opt_lower": fmt12(instance.planted_opt_lower),
    }


def save_instance(instance: Instance, path: str | Path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance), indent=1) + "\n")


def instance_from_dict(data: dict[str, Any], path: str = "<json>") -> Instance:
    for key in ("points", "k"):
        if key not in data:
            raise ParseError(f"{path}: missing required key {key!r}")
    metric = data.get("metric", "euclidean")
    if metric not in METRICS:
        raise ParseError(f"{path}: unknown metric {metric!r}")
    ds = Dataset(data["points"], metric=metric)
    system = normalize(data.get("cl", []), data.get("ml", []))
    inst = Instance(
        dataset=ds,
        system=system,
        k=int(data["k"]),
        planted_opt=data.get("planted_opt"),
        planted_opt_kind=data.get("planted_opt_kind"),
        planted_opt_lower=data.get("planted_opt_lower"),
    )
    return inst


def load_instance(
    points_path: str | Path | None = None,
    constraints_path: str | Path | None = None,
    bundle_path: str | Path | None = None,
    k: int | None = None,
    metric: str = "euclidean",
) -> Instance:
    """Load from a JSON bundle, or from a points CSV plus constraints file.

    Normalization runs on load; infeasibility (a CL/ML contradiction) and
    parse errors raise, while budget/range issues are reported later by
    :meth:`Instance.validation_errors`.
    """
    if bundle_path is not None:
        path = Path(bundle_path)
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ParseError(f"{path}: invalid JSON ({e})")
        if k is not None:
            data["k"] = k
        return instance_from_dict(data, str(path))
    if points_path is None:
        raise ParseError("either a bundle or a points file is required")
    rows = load_points_csv(points_path)
    if metric not in METRICS:
        raise ParseError(f"unknown metric {metric!r}")
    ds = Dataset(rows, metric=metric)
    cl: list[list[int]] = []
    ml: list[list[int]] = []
    if constraints_path is not None:
        cl, ml = load_constraints_file(constraints_path, n=ds.n)
    if k is None:
        raise ParseError("k is required when loading from points/constraints files")
    return Instance(dataset=ds, system=normalize(cl, ml), k=k)


@dataclass
class Report:
    """Everything a solver run reports; all numbers recomputed from the
    realized assignment, never copied from intermediate solver state."""

    n: int
    k: int
    dim: int
    metric: str
    cl_sets: int
    ml_sets: int
    disjoint_cl: bool
    solver: str
    guarantee: str
    radius: float | None
    nearest_center_radius: float | None
    probed_eta: float | None
    probe_count: int
    swaps_applied: int
    wall_time_ms: float | None
    ratio: float | None
    centers: list[int]
    assignment: list[int] | None = None
    errors: list[str] | None = None

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        for key in ("radius", "nearest_center_radius", "probed_eta", "ratio", "wall_time_ms"):
            d[key] = fmt12(d[key])
        return d


CSV_COLUMNS = [
    "n",
    "k",
    "dim",
    "metric",
    "cl_sets",
    "ml_sets",
    "disjoint_cl",
    "solver",
    "guarantee",
    "radius",
    "nearest_center_radius",
    "probed_eta",
    "probe_count",
    "swaps_applied",
    "wall_time_ms",
    "ratio",
]


def write_report(
    report: Report, path: str | Path, fmt: str = "json", stable: bool = False
) -> None:
    """Write a report as full JSON or one flat CSV row.

    ``stable=True`` blanks the wall-clock field so golden files compare
    byte-for-byte across runs; everything else is already deterministic.
    """
    d = report.to_dict()
    if stable:
        d["wall_time_ms"] = None
    path = Path(path)
    if fmt == "json":
        path.write_text(json.dumps(d, indent=1) + "\n")
    elif fmt == "csv_row":
        lines = ["# " + ",".join(CSV_COLUMNS)]
        cells = []
        for col in CSV_COLUMNS:
            v = d[col]
            if v is None:
                cells.append("")  # absence, not zero
            elif isinstance(v, float):
                cells.append(f"{v:.12g}")
            else:
                cells.append(str(v))
        lines.append(",".join(cells))
        path.write_text("\n".join(lines) + "\n")
    else:
        raise ValueError(f"unknown report format {fmt!r}")


def load_report(path: str | Path) -> Report:
    data = json.loads(Path(path).read_text())
    return Report(**data)


def build_report(
    instance: Instance,
    solver_name: str,
    solution,
    wall_time_ms: float | None,
    include_assignment: bool = False,
) -> Report:
    """Assemble a report from a finished solution, recomputing the numbers."""
    from .assign import clustering_radius, nearest_center_radius

    ds, system = instance.dataset, instance.system
    radius = None
    nearest = None
    ratio = None
    if solution.assignment is not None:
        radius = clustering_radius(solution.assignment, ds)
        nearest = nearest_center_radius(solution.centers, ds)
        if instance.planted_opt:
            ratio = radius / instance.planted_opt
    gated = include_assignment and solution.assignment is not None and ds.n <= 50000
    return Report(
        n=ds.n,
        k=instance.k,
        dim=ds.dim,
        metric=ds.metric,
        cl_sets=len(system.cl),
        ml_sets=len(system.ml),
        disjoint_cl=system.disjoint_cl,
        solver=solver_name,
        guarantee=solution.guarantee,
        radius=radius,
        nearest_center_radius=nearest,
        probed_eta=None if solution.probed_eta == math.inf else solution.probed_eta,
        probe_count=solution.probe_count,
        swaps_applied=solution.swaps_applied,
        wall_time_ms=wall_time_ms,
        ratio=ratio,
        centers=list(solution.centers),
        assignment=list(solution.assignment) if gated else None,
        errors=list(solution.errors) if solution.errors else None,
    )
