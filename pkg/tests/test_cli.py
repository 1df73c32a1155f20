import json
import subprocess
import sys

import pytest

from multiquandle.cli import main
from multiquandle.groups import group_to_json, standard_group, transposition
from multiquandle.multirack import multirack_from_json
from multiquandle.knots import TREFOIL


def run(args, capsys):
    code = main([str(a) for a in args])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def z2(tmp_path):
    path = tmp_path / "z2.grp"
    path.write_text(group_to_json(standard_group("cyclic", 2)))
    return path


@pytest.fixture
def s3(tmp_path):
    path = tmp_path / "s3.grp"
    path.write_text(group_to_json(standard_group("symmetric", 3)))
    return path


@pytest.fixture
def r3(tmp_path):
    path = tmp_path / "r3.mq"
    path.write_text(json.dumps({"order": 3, "labels": ["a"], "tables": {"a": [[0, 2, 1], [2, 1, 0], [1, 0, 2]]}}))
    return path


def test_construct_trivial_then_verify(tmp_path, capsys):
    out = tmp_path / "t3.mq"
    assert run(["construct", "trivial", "--order", 3, "-o", out], capsys)[0] == 0
    code, text, _ = run(["verify", out, "--quandle"], capsys)
    assert code == 0 and text.strip() == "passed"


def test_conjrack_fails_quandle_check(tmp_path, z2, capsys):
    out = tmp_path / "c.mq"
    assert run(["construct", "conjrack", "--group", z2, "-o", out], capsys)[0] == 0
    code, text, _ = run(["verify", out, "--quandle"], capsys)
    assert code == 1
    assert "QuandleDiagonal g:1 0" in text and "QuandleDiagonal g:1 1" in text
    assert run(["verify", out], capsys)[0] == 0


def test_color_trefoil(r3, capsys):
    code, text, _ = run(["color", "--pd", TREFOIL, "--target", r3, "--op", "a"], capsys)
    assert code == 0 and text == "9\n"


def test_color_errors(r3, capsys):
    code, _, err = run(["color", "--pd", TREFOIL, "--target", r3, "--op", "zz"], capsys)
    assert code == 64 and err.count("\n") == 1
    code, _, err = run(["color", "--pd", "X[1,2", "--target", r3, "--op", "a"], capsys)
    assert code == 65 and err.count("\n") == 1


def test_construct_variants(tmp_path, s3, capsys):
    t = transposition(3, 0, 1)
    for args in (
        ["coset", "--group", s3, "--subgroup-gens", str(t)],
        ["coset", "--group", s3, "--subgroup-gens", str(t), "--s", str(t)],
        ["conjpower", "--group", s3, "--powers", "0,1,2"],
        ["conjpower", "--group", s3],
        ["alexander", "--mod", 5, "--units", "2,3"],
    ):
        out = tmp_path / "x.mq"
        assert run(["construct", *args, "-o", out], capsys)[0] == 0
        M = multirack_from_json(out.read_text(), require_quandle=True)
        assert M.is_quandle()
    code, _, err = run(["construct", "coset", "--group", s3, "--subgroup-gens", str(t), "--s", "3"], capsys)
    assert code == 65 and "center" in err


def test_construct_to_stdout_round_trip(capsys):
    code, text, _ = run(["construct", "alexander", "--mod", 3, "--units=-1"], capsys)
    assert code == 0
    M = multirack_from_json(text)
    assert M.labels == ("t:2",)


def test_restrict(tmp_path, s3, capsys):
    full = tmp_path / "q.mq"
    run(["construct", "coset", "--group", s3, "--subgroup-gens", transposition(3, 0, 1), "-o", full], capsys)
    labels = json.loads(full.read_text())["labels"]
    out = tmp_path / "r.mq"
    assert run(["restrict", full, "--labels", labels[1], "-o", out], capsys)[0] == 0
    assert json.loads(out.read_text())["labels"] == [labels[1]]
    assert run(["restrict", full, "--labels", "nope"], capsys)[0] == 64


def test_iso_outcomes(tmp_path, r3, s3, capsys):
    q = tmp_path / "q.mq"
    t = transposition(3, 0, 1)
    run(["construct", "coset", "--group", s3, "--subgroup-gens", t, "--s", t, "-o", q], capsys)
    code, text, _ = run(["iso", q, r3], capsys)
    assert code == 0 and set(json.loads(text)) == {"elementMap", "labelMap"}
    triv = tmp_path / "t.mq"
    run(["construct", "trivial", "--order", 3, "-o", triv], capsys)
    code, text, _ = run(["iso", triv, r3], capsys)
    assert code == 1 and text.strip() == "none"
    code, text, _ = run(["iso", r3, r3, "--budget", 1], capsys)
    assert code == 2 and text.strip() == "budget-exceeded"


def test_enumerate(capsys):
    code, text, _ = run(["enumerate", "--order", 3], capsys)
    lines = text.strip().splitlines()
    assert code == 0 and len(lines) == 3
    assert all(set(json.loads(line)) == {"order", "labels", "tables"} for line in lines)
    code, text, _ = run(["enumerate", "--order", 2, "--racks"], capsys)
    assert len(text.strip().splitlines()) == 2
    assert run(["enumerate", "--order", 9], capsys)[0] == 64


def test_usage_and_input_errors(tmp_path, capsys):
    assert run([], capsys)[0] == 64
    assert run(["frobnicate"], capsys)[0] == 64
    assert run(["construct", "trivial"], capsys)[0] == 64
    bad = tmp_path / "bad.mq"
    bad.write_text("{not json")
    code, _, err = run(["verify", bad], capsys)
    assert code == 65 and err.count("\n") == 1
    bad.write_text('{"order": 2, "labels": ["a"], "tables": {"a": [[0, 7], [1, 1]]}}')
    assert run(["verify", bad], capsys)[0] == 65
    assert run(["verify", tmp_path / "missing.mq"], capsys)[0] == 65
    grp = tmp_path / "g.grp"
    grp.write_text('{"order": 2, "table": [[0, 1], [1, 1]]}')
    assert run(["construct", "conjrack", "--group", grp], capsys)[0] == 65


def test_verify_reports_axiom_failure_exit_1(tmp_path, capsys):
    bad = tmp_path / "bad.mq"
    bad.write_text('{"order": 2, "labels": ["a"], "tables": {"a": [[0, 0], [0, 1]]}}')
    code, text, _ = run(["verify", bad], capsys)
    assert code == 1 and "NonDegenerate a 0" in text


def test_round_trip_and_determinism(tmp_path, s3, capsys):
    a, b = tmp_path / "a.mq", tmp_path / "b.mq"
    for out in (a, b):
        run(["construct", "conjrack", "--group", s3, "-o", out], capsys)
    assert a.read_bytes() == b.read_bytes()
    M = multirack_from_json(a.read_text())
    c = tmp_path / "c.mq"
    c.write_text(json.dumps({"order": M.order, "labels": list(M.labels), "tables": {s: M.table(s) for s in M.labels}}) + "\n")
    assert c.read_bytes() == a.read_bytes()
    g1, g2 = tmp_path / "g1", tmp_path / "g2"
    run(["group", "--kind", "dihedral", "--n", 4, "-o", g1], capsys)
    run(["group", "--kind", "dihedral", "--n", 4, "-o", g2], capsys)
    assert g1.read_bytes() == g2.read_bytes()


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "multiquandle", "construct", "trivial", "--order", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["order"] == 2
