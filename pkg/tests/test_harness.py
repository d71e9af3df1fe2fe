import csv
import io
import json

import pytest

from edgeorder.bounds import path_upper
from edgeorder.egraph import decode_witness, validate_witness
from edgeorder.geom import validate_point_set
from edgeorder.harness import (
    CSV_COLUMNS,
    ExperimentConfig,
    GenerationError,
    builtin_suite,
    gen_points,
    load_config,
    run_experiment_suite,
    statistic_bound,
)


def test_gen_points_parabola():
    assert gen_points("parabola", 5) == [(0, 0), (1, 1), (2, 4), (3, 9), (4, 16)]


@pytest.mark.parametrize("seed", range(5))
def test_gen_points_validate(seed):
    assert validate_point_set(gen_points("convex_circle", 8, seed), "convex") is None
    assert validate_point_set(gen_points("random_general", 12, seed), "general") is None


def test_gen_points_examples_and_errors():
    assert validate_point_set(gen_points("convex_circle", 8, 1), "convex") is None
    assert validate_point_set(gen_points("random_general", 12, 1), "general") is None
    assert gen_points("random_general", 10, 4) == gen_points("random_general", 10, 4)
    with pytest.raises(ValueError):
        gen_points("spiral", 4)
    with pytest.raises(ValueError):
        gen_points("parabola", 0)
    with pytest.raises(GenerationError):
        gen_points("parabola", 2000)


def test_seven_n_values_give_seven_rows():
    cfg = ExperimentConfig(shape="parabola", n_values=(3, 4, 5, 6, 7, 8, 9), statistics=("path",))
    report = run_experiment_suite(cfg)
    assert len(report.rows) == 7
    assert [r.n for r in report.rows] == [3, 4, 5, 6, 7, 8, 9]


def test_rerun_is_byte_identical(tmp_path):
    cfg = ExperimentConfig.from_dict(
        {
            "name": "mix",
            "shape": "convex_circle",
            "n": [5, 7],
            "seed": 3,
            "orderings": [{"kind": "random", "seed": 2}, {"kind": "side_count"}],
            "statistics": ["path", "tree_either", "ramsey_path"],
        }
    )
    a, b = tmp_path / "a", tmp_path / "b"
    run_experiment_suite(cfg, a)
    run_experiment_suite(cfg, b)
    for name in ("mix.csv", "mix.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()
    files = sorted(p.name for p in (a / "witnesses").iterdir())
    assert files == sorted(p.name for p in (b / "witnesses").iterdir())
    for f in files:
        assert (a / "witnesses" / f).read_bytes() == (b / "witnesses" / f).read_bytes()


def test_thm3_suite_within_bound(tmp_path):
    report = run_experiment_suite(builtin_suite("thm3"), tmp_path)
    rows = list(csv.DictReader(io.StringIO(report.to_csv())))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [int(r["n"]) for r in rows] == [4, 8, 16]
    for r in rows:
        assert r["exact"] == "true"
        assert int(r["value"]) <= int(r["bound"]) == path_upper(int(r["n"]))
        assert r["ms"] == ""


def test_witness_files_revalidate(tmp_path):
    cfg = ExperimentConfig.from_dict(
        {"name": "w", "shape": "parabola", "n": [6, 9], "orderings": [{"kind": "block"}], "statistics": ["path", "tree_descending", "convex_tree"]}
    )
    report = run_experiment_suite(cfg, tmp_path)
    doc = json.loads((tmp_path / "w.json").read_text())
    refs = [r["witness_file"] for r in doc["rows"]]
    assert len(refs) == len(report.rows) == 6
    for ref in refs:
        witness, g = decode_witness((tmp_path / ref).read_text())
        assert validate_witness(g.graph, g.ordering, witness) is None


def test_row_errors_do_not_abort(tmp_path):
    cfg = ExperimentConfig.from_dict(
        {"name": "bad", "shape": "random_general", "n": [6, 7], "orderings": [{"kind": "slope_divide"}, {"kind": "lex"}], "statistics": ["path"]}
    )
    report = run_experiment_suite(cfg, tmp_path)
    assert len(report.rows) == 4
    errs = [r for r in report.rows if r.error]
    assert errs and all(r.ordering == "slope_divide" for r in errs)
    assert "ERROR" in (tmp_path / "bad.csv").read_text()


def test_config_round_trip(tmp_path):
    cfg = builtin_suite("thm6")
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    assert load_config(path).to_dict() == cfg.to_dict()
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"statistics": ["girth"]})


def test_timing_column_opt_in():
    cfg = ExperimentConfig(n_values=(4,), timing=True)
    row = run_experiment_suite(cfg).rows[0]
    assert row.ms is not None and row.csv_cells()[-1] != ""


def test_statistic_bound_kinds():
    assert statistic_bound("path", 16) == 8
    assert statistic_bound("tree_ascending", 16) == 31
    assert statistic_bound("convex_subset", 16) == 3
    assert statistic_bound("convex_tree", 16) is None
