import json
from pathlib import Path

import jsonschema
import pytest

from girard_couples.cli import main
from girard_couples.report import load_schema
from girard_couples.textio import load

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def run(capsys, *argv):
    code = main(list(argv) + ["--json", "-"])
    out = capsys.readouterr().out
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    assert report["exit_code"] == code
    return code, report


def failing(report):
    return [c for c in report["checks"] if c["status"] == "fail"]


def test_check_m3_lattice(capsys):
    code, rep = run(capsys, "check", "builtin:M3", "--suite", "lattice")
    assert code == 0 and rep["passed"]
    assert rep["info"]["lattice: distributive"] is False


def test_check_cs_couple_girard(capsys):
    code, rep = run(capsys, "check", "builtin:cs-couple-2x2", "--suite", "girard")
    assert code == 0 and rep["totals"]["fail"] == 0 and rep["totals"]["pass"] > 20


def test_check_corrupted_file(capsys, tmp_path):
    src = (SAMPLES / "corrupted.qt").read_text()
    path = tmp_path / "corrupted.qt"
    path.write_text(src)
    code, rep = run(capsys, "check", str(path))
    assert code == 11
    bad = failing(rep)
    assert bad[0]["name"] == "associativity" and len(bad[0]["witness"]) == 3
    assert rep["inputs"][0]["source"] == str(path) and len(rep["inputs"][0]["sha256"]) == 64


def test_text_and_json_agree(capsys, tmp_path):
    out = tmp_path / "r.json"
    code = main(["check", "builtin:frame-chain3", "--json", str(out)])
    text = capsys.readouterr().out
    rep = json.loads(out.read_text())
    jsonschema.validate(rep, load_schema())
    assert code == rep["exit_code"] == 13  # no Girard element
    names = [line for line in text.splitlines() if line.startswith("[")]
    assert len(names) == len(rep["checks"])
    for line, chk in zip(names, rep["checks"]):
        assert chk["name"] in line


def test_construct_endo(capsys, tmp_path):
    target = tmp_path / "endo.qt"
    code, rep = run(capsys, "construct", "endo", "--lattice", "builtin:chain3", "--out", str(target))
    assert code == 0
    assert load(target, validate=True).quantale.n == 6


def test_construct_rosenthal(capsys, tmp_path):
    target = tmp_path / "r.qt"
    code, rep = run(capsys, "construct", "rosenthal", "--quantale", "builtin:chain2", "--out", str(target))
    assert code == 0
    got = load(target, validate=True)
    assert got.quantale.n == 4 and got.dualizer is not None


def test_construct_gofs(capsys, tmp_path):
    target = tmp_path / "g.qt"
    code, rep = run(capsys, "construct", "GofS", "--lattice", "builtin:M3", "--out", str(target))
    assert code == 0
    assert any("R(G) ~ S" == c["name"] and c["status"] == "pass" for c in rep["checks"])
    assert target.read_text().startswith("# R(G) ~ M3")


@pytest.mark.parametrize("argv", [
    ["construct", "tensor", "--lattice", "builtin:chain3"],
    ["construct", "cs-couple", "--lattice", "builtin:chain2"],
    ["construct", "G", "--couple", "builtin:zero-subZ4"],
    ["construct", "subring", "--n", "6", "--k", "3"],
])
def test_other_constructions(capsys, argv, tmp_path):
    code, _ = run(capsys, *argv, "--out", str(tmp_path / "x.txt"))
    assert code == 0


def test_spectrum(capsys):
    code, rep = run(capsys, "spectrum", "--n", "2", "--samples", "200", "--seed", "42")
    assert code == 0 and rep["seed"] == 42
    errs = [c["error"] for c in rep["checks"] if c["error"] is not None]
    assert errs and max(errs) < 1e-9
    code, rep = run(capsys, "spectrum", "--dims", "2,1", "--samples", "100", "--seed", "1")
    assert code == 0
    code, rep = run(capsys, "spectrum", "--n", "1", "--samples", "5")
    assert code == 0 and any("chain" in str(v) for v in rep["info"].values())


def test_spectrum_cap(capsys):
    code, rep = run(capsys, "spectrum", "--n", "6", "--samples", "1")
    assert code == 3 and rep["error"]


def test_eval(capsys):
    code, rep = run(capsys, "eval", "--model", "builtin:rosenthal-chain2", "--formula", "a | ~a", "--tautology")
    assert code == 0
    code, rep = run(capsys, "eval", "--formula", "1")
    assert code == 0
    code, rep = run(capsys, "eval", "--model", "builtin:rosenthal-subZ4", "--formula", "a * ~a", "--tautology")
    assert code == 15 and failing(rep)[0]["witness"]


def test_eval_syntax_error(capsys):
    code = main(["eval", "--formula", "a * ("])
    captured = capsys.readouterr()
    assert code == 1
    assert "column 6" in captured.err


def test_eval_assignment(capsys):
    code, rep = run(capsys, "eval", "--model", "builtin:rosenthal-chain2", "--formula", "a * b",
                    "--assign", "a=(1;1'),b=(1;0')")
    assert code == 0
    assert rep["info"]["value"] == "(1;0')"
    code, rep = run(capsys, "eval", "--formula", "a", "--assign", "a=nope")
    assert code == 1


def test_budget_exit(capsys):
    code, rep = run(capsys, "check", "builtin:bool3", "--suite", "quantale", "--budget", "100")
    assert code == 3 and "512" in rep["error"] and "100" in rep["error"]
    code, rep = run(capsys, "check", "builtin:bool3", "--suite", "quantale")
    assert code == 3 and "explicit budget" in rep["error"]


def test_unknown_builtin(capsys):
    code, rep = run(capsys, "check", "builtin:nonesuch")
    assert code == 1


def test_list(capsys):
    assert main(["list"]) == 0
    names = capsys.readouterr().out.split()
    assert "cs-couple-2x2" in names and "rosenthal-subZ4" in names
