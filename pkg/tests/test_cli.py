import csv
import json
import subprocess
import sys

import pytest

from valtree.cli import main


def run(tmp_path, *args):
    code = main(list(args) + ["--out", str(tmp_path)])
    report = json.loads((tmp_path / "report.json").read_text())
    return code, report


def write_scenario(tmp_path, d):
    path = tmp_path / "scenario.json"
    path.write_text(json.dumps(d))
    return str(path)


def test_profile_writes_csv_and_report(tmp_path):
    sc = write_scenario(tmp_path, {
        "name": "bad-small", "field": "Q(t)", "n": 2,
        "generators": [[["t", "0"], ["0", "(1)/(t)"]], [["1", "1"], ["0", "1"]]],
        "ring": {"family": "LaurentZ"}, "thresholds": [0], "radii": [0, 3],
    })
    code, report = run(tmp_path, "profile", "--scenario", sc)
    assert code == 0
    with open(tmp_path / "profile.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0]) == ["R", "C", "count", "min_disp", "max_disp"]
    assert [int(r["count"]) for r in rows] == [1, 3, 5, 7]
    assert report["result"]["verdicts"] == {"0": "growing"}


def test_rank_report_shape(tmp_path):
    code, report = run(tmp_path, "rank", "--scenario", "heisenberg")
    assert code == 0
    layers = report["result"]["layers"]
    assert [(lay["layer"], lay["lower"], lay["upper"]) for lay in layers] == [(1, 2, 2), (2, 1, 1)]
    assert set(layers[0]) >= {"layer", "positions", "lower", "upper", "basis_printed"}
    assert layers[1]["positions"] == [[1, 3]]


def test_trace_rep_report(tmp_path):
    code, report = run(tmp_path, "trace-rep", "--scenario", "sl2z-tracerep")
    assert code == 0
    res = report["result"]
    assert len(res["basis_words"]) == 4
    assert res["gram_determinant"] != "0"
    assert set(res["alpha"]) == {"S", "T", "S^-1", "T^-1"}


def test_alperin_shalen_report(tmp_path):
    code, report = run(tmp_path, "alperin-shalen", "--scenario", "laurent-bad")
    assert code == 0
    res = report["result"]
    assert [e["integral"] for e in res["elements"]] == [False, True, False, True]
    verdicts = {g["label"]: g["isotropy_certificate"] for g in res["generators"]}
    assert verdicts == {"a": False, "b": True, "a^-1": False, "b^-1": True}


def test_valuate_ball_census_cover(tmp_path):
    code, report = run(tmp_path, "valuate", "--scenario", "sl2-z-half")
    assert code == 0
    assert [list(e["valuations"].values()) for e in report["result"]["elements"]] == [[-1], [0], [-2], [2]]
    code, report = run(tmp_path, "ball", "--scenario", "sl2-z-half", "--radius", "2")
    assert code == 0 and report["result"]["sizes"] == {"0": 1, "1": 5, "2": 16}
    code, report = run(tmp_path, "census", "--scenario", "laurent-bad", "--radius", "3")
    assert code == 0 and report["result"]["all_certified"]
    code, report = run(tmp_path, "cover", "--scenario", "sl2-z-half")
    assert code == 0
    res = report["result"]
    assert res["diameter_ok"] and res["separation_ok"] and res["multiplicity_ok"]


def test_exit_code_ball_too_large(tmp_path):
    sc = write_scenario(tmp_path, {
        "n": 2, "generators": [[["1", "2"], ["0", "1"]], [["1", "0"], ["2", "1"]]],
        "valuations": [{"type": "padic", "p": 2}], "radii": [0, 12], "element_cap": 1000,
    })
    code, report = run(tmp_path, "profile", "--scenario", sc)
    assert code == 2
    assert report["error"]["kind"] == "BallTooLarge"


@pytest.mark.parametrize("bad", [
    {"n": 2, "generators": [[["2", "0"], ["0", "1"]]]},
    {"n": 2, "generators": [[["1", "x"], ["0", "1"]]]},
    {"n": 2, "field": "Q(t)", "generators": [[["1", "3t"], ["0", "1"]]]},
    {"generators": []},
])
def test_exit_code_validation(tmp_path, bad):
    code, report = run(tmp_path, "profile", "--scenario", write_scenario(tmp_path, bad))
    assert code == 3
    assert "error" in report


def test_exit_code_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _ = run(tmp_path, "ball", "--scenario", str(path))
    assert code == 3


def test_exit_code_other_library_error(tmp_path):
    code, report = run(tmp_path, "rank", "--scenario", "sl2-z-half")
    assert code == 1
    assert report["error"]["kind"] == "NotUnipotentForm"


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "valtree.cli", "ball", "--scenario", "heisenberg", "--out", str(tmp_path), "--radius", "1"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert json.loads((tmp_path / "report.json").read_text())["result"]["sizes"] == {"0": 1, "1": 5}
