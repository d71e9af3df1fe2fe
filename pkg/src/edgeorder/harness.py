"""Point generators and reproducible experiment suites.

All randomness comes from ``random.Random(seed)`` (MT19937), which is the
generator this repository is pinned to.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import bounds
from .egraph import (
    GeometricGraph,
    build_complete_graph,
    dumps_canonical,
    encode_witness,
    witness_to_dict,
)
from .extremal import extract_monotone_tree_general, extract_xmonotone_path, largest_convex_subset
from .geom import COORD_LIMIT, GeometryError, Point, cross, validate_point_set
from .orderings import OrderingSpec, make_ordering
from .search import SearchBudget, largest_monotone_noncrossing_complete_tree, longest_monotone_noncrossing_path

log = logging.getLogger(__name__)

SHAPES = ("parabola", "convex_circle", "random_general")
STATISTICS = (
    "path",
    "tree_ascending",
    "tree_descending",
    "tree_either",
    "ramsey_path",
    "convex_subset",
    "convex_tree",
)
CSV_COLUMNS = ("n", "shape", "seed", "ordering", "statistic", "value", "exact", "bound", "ms")

MAX_RETRIES = 100
CIRCLE_RADIUS = 1 << 16
GRID_SIZE = 1 << 12


class GenerationError(RuntimeError):
    pass


def gen_points(shape: str, n: int, seed: int = 0) -> list[Point]:
    """Points in general position; the convex shapes come out in
    counterclockwise order starting from vertex 0."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if shape == "parabola":
        if (n - 1) ** 2 > COORD_LIMIT:
            raise GenerationError(f"parabola with n={n} exceeds the coordinate limit")
        return [Point(i, i * i) for i in range(n)]
    rng = random.Random(seed)
    if shape == "convex_circle":
        for _ in range(MAX_RETRIES):
            pts = []
            for k in range(n):
                theta = 2 * math.pi * (k + 0.5 * rng.random()) / n
                pts.append(Point(round(CIRCLE_RADIUS * math.cos(theta)), round(CIRCLE_RADIUS * math.sin(theta))))
            if validate_point_set(pts, "convex") is None:
                return pts
        raise GenerationError(f"no convex {n}-gon after {MAX_RETRIES} attempts")
    if shape == "random_general":
        pts: list[Point] = []
        seen = set()
        while len(pts) < n:
            for _ in range(MAX_RETRIES):
                p = Point(rng.randrange(GRID_SIZE), rng.randrange(GRID_SIZE))
                if p in seen:
                    continue
                if any(cross(a, b, p) == 0 for i, a in enumerate(pts) for b in pts[i + 1:]):
                    continue
                break
            else:
                raise GenerationError(f"could not place point {len(pts)} after {MAX_RETRIES} attempts")
            pts.append(p)
            seen.add(p)
        return pts
    raise ValueError(f"unknown shape {shape!r}; expected one of {SHAPES}")


@dataclass
class ExperimentConfig:
    shape: str = "parabola"
    n_values: tuple[int, ...] = (4, 8, 16)
    seed: int = 0
    orderings: tuple[OrderingSpec, ...] = (OrderingSpec("slope_divide"),)
    statistics: tuple[str, ...] = ("path",)
    budget: SearchBudget = field(default_factory=SearchBudget)
    timing: bool = False
    name: str = "custom"

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise ValueError(f"unknown shape {self.shape!r}")
        for s in self.statistics:
            if s not in STATISTICS:
                raise ValueError(f"unknown statistic {s!r}")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        b = d.get("budget", {})
        n_values = d.get("n", [4, 8, 16])
        if isinstance(n_values, int):
            n_values = [n_values]
        return cls(
            shape=d.get("shape", "parabola"),
            n_values=tuple(n_values),
            seed=d.get("seed", 0),
            orderings=tuple(OrderingSpec.from_dict(o) for o in d.get("orderings", [{"kind": "slope_divide"}])),
            statistics=tuple(d.get("statistics", ["path"])),
            budget=SearchBudget(b.get("nodes"), b.get("secs")),
            timing=bool(d.get("timing", False)),
            name=d.get("name", "custom"),
        )

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "shape": self.shape,
            "n": list(self.n_values),
            "seed": self.seed,
            "orderings": [o.to_dict() for o in self.orderings],
            "statistics": list(self.statistics),
            "budget": {"nodes": self.budget.max_nodes, "secs": self.budget.max_seconds},
            "timing": self.timing,
        }


def load_config(path: str | Path) -> ExperimentConfig:
    return ExperimentConfig.from_dict(json.loads(Path(path).read_text()))


SUITES = {
    "thm3": {"shape": "parabola", "n": [4, 8, 16], "orderings": [{"kind": "slope_divide"}], "statistics": ["path"]},
    "thm6": {
        "shape": "parabola",
        "n": [6, 8, 10, 12],
        "orderings": [{"kind": "side_count"}],
        "statistics": ["tree_ascending", "tree_descending"],
    },
    "thm7": {"shape": "convex_circle", "n": [8, 12, 16], "orderings": [{"kind": "block"}], "statistics": ["tree_either"]},
    "ramsey": {
        "shape": "parabola",
        "n": [10, 20, 40],
        "orderings": [{"kind": "random", "seed": 1}],
        "statistics": ["ramsey_path"],
    },
    "es": {"shape": "random_general", "n": [8, 16, 32, 64], "seed": 1, "orderings": [{"kind": "lex"}], "statistics": ["convex_subset"]},
}


def builtin_suite(name: str) -> ExperimentConfig:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {sorted(SUITES)}")
    return ExperimentConfig.from_dict({"name": name, **SUITES[name]})


@dataclass
class Row:
    n: int
    shape: str
    seed: int
    ordering: str
    statistic: str
    value: int | None
    exact: bool
    bound: float | int | None
    ms: float | None
    witness: dict | None = None
    witness_file: str | None = None
    error: str | None = None

    def csv_cells(self) -> list[str]:
        if isinstance(self.bound, float):
            bound = f"{self.bound:.4f}"
        else:
            bound = "" if self.bound is None else str(self.bound)
        return [
            str(self.n),
            self.shape,
            str(self.seed),
            self.ordering,
            self.statistic,
            "ERROR" if self.error else str(self.value),
            "true" if self.exact else "false",
            bound,
            "" if self.ms is None else f"{self.ms:.1f}",
        ]


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list[Row]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for r in self.rows:
            w.writerow(r.csv_cells())
        return buf.getvalue()

    def to_document(self) -> str:
        rows = []
        for r in self.rows:
            d = dict(zip(CSV_COLUMNS, r.csv_cells()))
            if r.witness_file:
                d["witness_file"] = r.witness_file
            if r.error:
                d["error"] = r.error
            rows.append(d)
        return dumps_canonical({"config": self.config.to_dict(), "rows": rows})


def _tree_size_bound(n: int) -> int:
    return 2 ** (bounds.tree_height_upper(n) + 1) - 1


def statistic_bound(statistic: str, n: int):
    """Reference bound reported next to a measurement (None if there is none).

    Path and tree statistics carry upper bounds valid for their adversarial
    orderings; ramsey_path and convex_subset carry guaranteed lower bounds.
    """
    if statistic == "path":
        return bounds.path_upper(n)
    if statistic in ("tree_ascending", "tree_descending"):
        return _tree_size_bound(n)
    if statistic == "tree_either":
        return bounds.block_upper(n)
    if statistic == "ramsey_path":
        return bounds.ramsey_guarantee(n) - 1 if n >= 3 else max(n - 1, 0)
    if statistic == "convex_subset":
        return bounds.es_guarantee(n)
    return None


def measure(graph: GeometricGraph, ordering, statistic: str, budget: SearchBudget):
    """(value, exact, witness) for one statistic."""
    if statistic == "path":
        r = longest_monotone_noncrossing_path(graph, ordering, budget)
        return r.length, r.exact, r.witness
    if statistic.startswith("tree_"):
        r = largest_monotone_noncrossing_complete_tree(graph, ordering, statistic[5:], budget)
        return r.size, r.exact, r.witness
    if statistic == "ramsey_path":
        w = extract_xmonotone_path(graph, ordering)
        return w.length, True, w
    if statistic == "convex_subset":
        return len(largest_convex_subset(graph.points)), True, None
    if statistic == "convex_tree":
        w = extract_monotone_tree_general(graph, ordering)
        return w.size, True, w
    raise ValueError(f"unknown statistic {statistic!r}")


def run_experiment_suite(config: ExperimentConfig, out_dir: str | Path | None = None) -> ExperimentReport:
    """One row per (n, ordering, statistic), in that nesting order.

    With ``out_dir`` the CSV, the report document and one self-contained
    witness file per row are written there.
    """
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        (out / "witnesses").mkdir(parents=True, exist_ok=True)
    rows: list[Row] = []
    for n in config.n_values:
        for spec in config.orderings:
            graph = ordering = None
            setup_error = None
            try:
                graph = build_complete_graph(gen_points(config.shape, n, config.seed))
                ordering = make_ordering(graph, spec)
            except (GeometryError, GenerationError, ValueError) as exc:
                setup_error = f"{type(exc).__name__}: {exc}"
            for stat in config.statistics:
                row = Row(n, config.shape, config.seed, spec.kind, stat, None, False, statistic_bound(stat, n), None)
                if setup_error:
                    row.error = setup_error
                    rows.append(row)
                    continue
                t0 = time.perf_counter()
                try:
                    value, exact, witness = measure(graph, ordering, stat, config.budget)
                except (GeometryError, ValueError, AssertionError) as exc:
                    row.error = f"{type(exc).__name__}: {exc}"
                    log.warning("row n=%d %s %s failed: %s", n, spec.kind, stat, row.error)
                    rows.append(row)
                    continue
                elapsed = (time.perf_counter() - t0) * 1000
                row.value, row.exact = value, exact
                row.ms = elapsed if config.timing else None
                if witness is not None:
                    row.witness = witness_to_dict(witness)
                    if out is not None:
                        name = f"{config.shape}_n{n}_s{config.seed}_{spec.kind}_{stat}.json"
                        meta = {"shape": config.shape, "seed": config.seed, "ordering": spec.to_dict(), "statistic": stat}
                        (out / "witnesses" / name).write_text(encode_witness(witness, graph, ordering, meta))
                        row.witness_file = f"witnesses/{name}"
                rows.append(row)
    report = ExperimentReport(config, rows)
    if out is not None:
        (out / f"{config.name}.csv").write_text(report.to_csv())
        (out / f"{config.name}.json").write_text(report.to_document())
    return report
