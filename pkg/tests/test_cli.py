"""CLI round-trips, exit codes and report determinism."""

import json
import os

import pytest

from quadact.cli import main


def run(args):
    try:
        return main(args)
    except SystemExit as exc:
        return exc.code


def test_generate_validate_classify_roundtrip(tmp_path, capsys):
    path = tmp_path / "b0.json"
    assert run(["generate", "B0", "--p", "3", "--out", str(path)]) == 0
    assert run(["validate", str(path)]) == 0
    capsys.readouterr()
    assert run(["classify", str(path), "--report", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["type"] == "B0" and rep["parameters"]["p"] == 3
    assert rep["parameters"]["l"] == 2


def test_generate_deterministic_bytes(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    for p in (p1, p2):
        assert run(["generate", "C2", "--s", "1", "--p", "1", "--delta", "1",
                    "--lam", "[[2]]", "--out", str(p)]) == 0
    assert p1.read_bytes() == p2.read_bytes()


def test_parse_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"basis": ["1", "x"], "W": ["x"], "products": '
                   '{"x,x": {"x": "1//2"}}}')
    assert run(["validate", str(bad)]) == 2
    nonassoc = tmp_path / "na.json"
    nonassoc.write_text(json.dumps({
        "basis": ["1", "x", "y", "z"],
        "unit": "1",
        "W": ["x", "y"],
        "products": {"x,x": {"y": "1"}, "x,y": {"z": "1"}, "y,y": {"z": "1"}},
    }))
    assert run(["validate", str(nonassoc)]) == 2


def test_equiv_exit_codes(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    c = tmp_path / "c.json"
    run(["generate", "B1", "--s", "2", "--out", str(a)])
    run(["generate", "C1", "--s", "2", "--out", str(b)])
    run(["generate", "B1", "--s", "2", "--out", str(c)])
    capsys.readouterr()
    assert run(["equiv", str(a), str(c)]) == 0
    assert run(["equiv", str(a), str(b)]) == 1


def test_equiv_lowdim_lambda(tmp_path, capsys):
    a = tmp_path / "l2.json"
    b = tmp_path / "lm2.json"
    c = tmp_path / "l3.json"
    run(["generate", "ld4_ii1", "--lam", "2", "--out", str(a)])
    run(["generate", "ld4_ii1", "--lam", "-2", "--out", str(b)])
    run(["generate", "ld4_ii1", "--lam", "3", "--out", str(c)])
    capsys.readouterr()
    assert run(["equiv", str(a), str(b)]) == 0
    assert run(["equiv", str(a), str(c)]) == 1


def test_classify_out_of_scope_and_special_kinds(tmp_path, capsys):
    doc = {
        "basis": ["1", "t", "t2", "t3"],
        "unit": "1",
        "W": ["t", "t2"],
        "products": {"t,t": {"t2": "1"}, "t,t2": {"t3": "1"}},
    }
    cubic = tmp_path / "cubic.json"
    cubic.write_text(json.dumps(doc))
    assert run(["classify", str(cubic)]) == 3
    capsys.readouterr()
    # corank-1 inputs classify fine and report Jordan blocks
    cor1 = tmp_path / "cor1.json"
    run(["generate", "corank1", "--lam", "[[1,0],[0,2]]", "--out", str(cor1)])
    capsys.readouterr()
    assert run(["classify", str(cor1), "--report", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["outcome"] == "corank1" and len(rep["canonical_blocks"]) == 2


def test_fixed_locus_report(tmp_path, capsys):
    doc = {
        "basis": ["1", "mu1", "mu2", "e1", "e2", "b0"],
        "unit": "1",
        "W": ["mu1", "mu2", "e1", "e2"],
        "products": {
            "e1,e1": {"b0": "1", "mu1": "1"},
            "e2,e2": {"b0": "1", "mu2": "1"},
        },
    }
    path = tmp_path / "fixed.json"
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert run(["classify", str(path), "--report", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["outcome"] == "fixed_locus"
    assert "fixed_pair" in rep


def test_act_command(tmp_path, capsys):
    path = tmp_path / "c0.json"
    run(["generate", "C0", "--p", "2", "--delta", "1", "--out", str(path)])
    capsys.readouterr()
    assert run(["act", str(path), "--g", "1,0,0,0,0", "--check"]) == 0
    out = capsys.readouterr().out
    assert "invariance check passed" in out


def test_selftest_small(capsys):
    assert run(["selftest", "--iterations", "1", "--max-s", "1", "--max-p", "1",
                "--seed", "7"]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out


def test_w_given_by_vectors(tmp_path, capsys):
    path = tmp_path / "w.json"
    run(["generate", "B0", "--p", "3", "--out", str(path)])
    doc = json.loads(path.read_text())
    n = len(doc["basis"])
    rows = []
    for k in range(1, n - 1):
        rows.append(["1" if i == k else "0" for i in range(n)])
    # a mixed row keeps the same span
    rows[0] = ["0", "1", "2", "0", "0", "0", "0"]
    doc["W"] = rows
    path.write_text(json.dumps(doc))
    capsys.readouterr()
    assert run(["classify", str(path), "--report", "json"]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["type"] == "B0"
