import json

import pytest

from edgeorder.cli import main
from edgeorder.egraph import decode, decode_witness, validate_witness


def test_gen_points_order_search_round_trip(tmp_path, capsys):
    pts = tmp_path / "pts.json"
    assert main(["gen-points", "--n", "6", "--out", str(pts)]) == 0
    assert decode(pts.read_text()).graph.n == 6
    ordered = tmp_path / "ordered.json"
    assert main(["order", "--in", str(pts), "--ordering", "side_count", "--out", str(ordered)]) == 0
    assert decode(ordered.read_text()).ordering is not None
    wit = tmp_path / "w.json"
    assert main(["search", "tree", "--in", str(ordered), "--direction", "ascending", "--out", str(wit)]) == 0
    summary = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert summary["exact"] and summary["size"] == 3
    w, doc = decode_witness(wit.read_text())
    assert validate_witness(doc.graph, doc.ordering, w) is None
    assert main(["verify", "witness", "--in", str(wit)]) == 0


def test_search_path_stdout(capsys):
    assert main(["search", "path", "--n", "8", "--ordering", "slope_divide"]) == 0
    out = capsys.readouterr()
    assert json.loads(out.err)["length"] == 4
    assert json.loads(out.out)["kind"] == "path"


@pytest.mark.parametrize(
    "argv",
    [
        ["extract", "ramsey", "--n", "12", "--ordering", "random", "--seed", "3"],
        ["extract", "es", "--shape", "random_general", "--n", "10"],
        ["extract", "tree", "--shape", "random_general", "--n", "14", "--ordering", "random"],
        ["verify", "lemma1", "--n", "8"],
        ["verify", "duality", "--n", "6", "--ordering", "random", "--seed", "5"],
        ["verify", "thm6", "--n", "8"],
        ["verify", "thm7", "--shape", "convex_circle", "--n", "8"],
        ["minimax", "--n", "3"],
    ],
)
def test_subcommands_succeed(argv, capsys):
    assert main(argv) == 0


def test_minimax_output(capsys):
    assert main(["minimax", "--n", "4", "--statistic", "path"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 2 and out["orderings"] == 720


def test_suite_writes_outputs(tmp_path):
    assert main(["suite", "thm3", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "thm3.csv").read_text().splitlines()[0] == "n,shape,seed,ordering,statistic,value,exact,bound,ms"


def test_suite_from_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"name": "c", "shape": "parabola", "n": [4, 5], "statistics": ["path"]}))
    assert main(["suite", "--config", str(cfg)]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": [[0, 0], [1, 1], [2, 2]]}')
    assert main(["search", "path", "--in", str(bad)]) == 1
    wit = tmp_path / "w.json"
    wit.write_text(json.dumps({"kind": "path", "direction": "ascending", "vertices": [0, 2, 1, 3],
                               "points": [[0, 0], [4, 0], [5, 4], [1, 5]], "ranks": [4, 1, 5, 2, 3, 6]}))
    assert main(["verify", "witness", "--in", str(wit)]) == 1
    assert main(["verify", "witness"]) == 2
    assert main(["search", "path", "--in", str(tmp_path / "missing.json")]) == 2
    assert main(["minimax", "--n", "6"]) == 2
    assert main(["search", "path", "--shape", "random_general", "--n", "6"]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["search", "cycle"])
    assert exc.value.code == 2
    capsys.readouterr()
