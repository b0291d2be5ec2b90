import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

import cubecat.cli as cli
from cubecat.cli import RunConfig, build_parser, main, run

DATA = Path(__file__).resolve().parents[1] / "src" / "cubecat" / "data"


def _json(capsys, argv):
    status = main(argv)
    return status, json.loads(capsys.readouterr().out or "null")


def test_compute_trefoil(capsys):
    status, out = _json(capsys, ["compute", "--knot", "trefoil_right_3"])
    assert status == 0
    assert set(out) >= {"theory", "coefficients", "diagram", "entries", "euler"}
    assert {"i": 3, "j": 7, "rank": 0, "torsion": [2]} in out["entries"]


def test_compute_over_f2(capsys):
    status, out = _json(capsys, ["compute", "--pd", "X[1,4,2,3];X[3,2,4,1]", "--coeff", "F2"])
    assert status == 0 and out["coefficients"] == "F2"


def test_bad_pd_exits_1(capsys):
    assert main(["compute", "--pd", "X[1,2,3]"]) == 1
    assert "error" in capsys.readouterr().err


def test_bad_coefficients_exit_1(capsys):
    assert main(["compute", "--knot", "trefoil_right_3", "--coeff", "R"]) == 1


def test_unknown_knot_and_missing_file(capsys, tmp_path):
    assert main(["compute", "--knot", "nope"]) == 1
    assert main(["compute", "--file", str(tmp_path / "missing.pd")]) == 1
    assert main(["compute", "--file", str(tmp_path)]) == 1


def test_verify_theorem1_on_directory(capsys, tmp_path):
    for name in ("trefoil_right_3", "hopf_positive", "unknot"):
        shutil.copy(DATA / f"{name}.pd", tmp_path)
    status, out = _json(capsys, ["verify", "--theorem", "1", "--file", str(tmp_path)])
    assert status == 0 and out["ok"]
    assert [r["diagram"] for r in out["results"]] == ["hopf_positive", "trefoil_right_3",
                                                      "unknot"]


def test_verify_signs_and_outerface(capsys):
    status, out = _json(capsys, ["verify", "--theorem", "signs", "--knot", "figure_eight",
                                 "--trials", "5"])
    assert status == 0 and out["results"][0]["certified"] == 5
    status, out = _json(capsys, ["verify", "--theorem", "outerface", "--knot", "trefoil_left_3"])
    assert status == 0


def test_verify_mod2(capsys):
    status, out = _json(capsys, ["verify", "--theorem", "mod2", "--knot", "knot_5_2"])
    assert status == 0 and out["ok"]


def test_euler(capsys):
    status, out = _json(capsys, ["euler", "--knot", "figure_eight", "--theory", "odd"])
    assert status == 0 and out["results"][0]["ok"]


def test_verify_relations(capsys):
    status, out = _json(capsys, ["verify-relations", "--theory", "nested"])
    assert status == 0
    assert [r["name"] for r in out["relations"] if r["sign"] == -1] == ["torus"]


def test_classify_signs(capsys):
    status, out = _json(capsys, ["classify-signs"])
    assert status == 0 and out["valid"] == 32


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    assert main(["compute", "--knot", "hopf_positive", "--output", str(target)]) == 0
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text())["theory"] == "khovanov"


def test_dump_cube(tmp_path, capsys):
    target = tmp_path / "cube.json"
    assert main(["compute", "--knot", "trefoil_left_3", "--theory", "nested",
                 "--dump-cube", str(target)]) == 0
    cube = json.loads(target.read_text())
    assert cube["dim"] == 3 and all("eps" in e for e in cube["edges"])


def test_certification_failure_exit_2(monkeypatch, capsys):
    monkeypatch.setattr(cli, "compare_mod2", lambda d, n: _FailedCert())
    assert main(["verify", "--theorem", "mod2", "--knot", "unknot"]) == 2


class _FailedCert:
    def to_json(self):
        return {"ok": False}


def test_run_is_deterministic_across_jobs():
    base = dict(command="verify", theorem="signs", corpus=True, trials=3, seed=7)
    a = json.dumps(run(RunConfig(**base, jobs=1))[1], sort_keys=True)
    b = json.dumps(run(RunConfig(**base, jobs=2))[1], sort_keys=True)
    assert a == b


def test_jobs_from_environment(monkeypatch):
    monkeypatch.setenv("CUBECAT_JOBS", "3")
    ns = build_parser().parse_args(["compute", "--knot", "unknot"])
    assert ns.jobs == 3


@pytest.mark.parametrize("argv", [["compute", "--knot", "knot_6_2", "--theory", "odd"],
                                  ["verify", "--theorem", "signs", "--knot", "knot_5_1",
                                   "--trials", "4", "--seed", "11"]])
def test_subprocess_output_is_byte_identical(argv):
    cmd = [sys.executable, "-m", "cubecat.cli", *argv]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first
