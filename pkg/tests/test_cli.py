"""CLI dispatch, exit codes, and output formats."""

from __future__ import annotations

import json

import pytest

from resgraph.cli import run
from resgraph.graphio import graph_to_data


def invoke(capsys, *argv):
    code = run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def invoke_json(capsys, *argv):
    code, out, err = invoke(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


def test_classify_json(capsys):
    data = invoke_json(capsys, "classify", "g_app")
    assert data["classification"] == "elliptic"
    assert data["chi_zmin"] == "0"
    assert data["zmin"]["a1"] == "2"


def test_classify_text(capsys):
    code, out, err = invoke(capsys, "classify", "g_app")
    assert code == 0
    assert "classification: elliptic" in out


def test_invariants(capsys):
    data = invoke_json(capsys, "invariants", "g_new")
    assert data["numerically_gorenstein"] is False
    assert data["canonical"]["b1"] == "14/3"
    assert data["canonical"]["u"] == "7"


def test_ellseq(capsys):
    data = invoke_json(capsys, "ellseq", "g_app")
    assert data["m"] == 1 and data["length"] == 2
    assert data["self_intersection_C"] == "-1"
    assert [sorted(b) for b in data["supports"]][1] == sorted(
        set("a1 a2 a3 a4 a5 a6 a7 a8 u".split()))
    assert [r["pg_Xj"] for r in data["pg_table"]] == [2, 1, 0]


def test_criteria(capsys):
    data = invoke_json(capsys, "criteria", "g_noecc")
    assert data["supports_wecc"] is False
    assert data["supports_ecc"] is False
    assert not data["extension_criterion"]["verdict"]
    assert any(r["node"] == "c8"
               for r in data["monomial_condition"]["violations"])


def test_strata_with_lprime(capsys):
    # E*_a8 = Z_K on this graph, so this asks for l' = -Z_K
    data = invoke_json(capsys, "strata", "g_app",
                       "--lprime", "estar:a8=1", "--mode", "wecc")
    assert data["pg"] == 2
    assert data["levels"]["2"] == [] and data["levels"]["1"] == []
    level0 = data["levels"]["0"]
    assert len(level0) == 2
    dims = sorted(e["dim"] for e in level0)
    assert dims == [1, 2]
    top = next(e for e in level0 if e["dim"] == 2)
    assert top["maximal"] and top["l"] == {}


def test_wstrata(capsys):
    data = invoke_json(capsys, "wstrata", "g_app", "--alpha", "1")
    assert data["pg"] == 1
    assert data["reduction_index"] == 0
    kinds = {s["kind"] for s in data["strata"]}
    assert kinds == {"linear", "wandering"}


def test_wstrata_lprime_literal(capsys):
    data = invoke_json(capsys, "wstrata", "g_app", "--lprime", "estar:a9=1")
    assert data["reduction_index"] == 1
    assert data["h1_on_image"] == 1


def test_trivializable_file(capsys, tmp_path, g_app):
    from resgraph.graphio import cycle_to_data
    from resgraph.laufer import fundamental_cycle
    path = tmp_path / "triv.json"
    path.write_text(json.dumps([cycle_to_data(fundamental_cycle(g_app))]))
    data = invoke_json(capsys, "strata", "g_app", "--mode", "custom",
                       "--trivializable", str(path), "--lprime", "estar:a8=1")
    assert data["pg"] == 2


def test_graph_from_file(capsys, tmp_path, g_app):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_to_data(g_app)))
    data = invoke_json(capsys, "classify", str(path))
    assert data["classification"] == "elliptic"


def test_oracle_verify_small(capsys, tmp_path, a2_chain):
    path = tmp_path / "a2.json"
    path.write_text(json.dumps(graph_to_data(a2_chain)))
    data = invoke_json(capsys, "oracle-verify", str(path))
    assert data["checks"]["fundamental-cycle"] == "ok"


def test_enumerate(capsys):
    data = invoke_json(capsys, "enumerate", "--max-vertices", "3",
                       "--euler-min", "-3", "--euler-max", "-2")
    assert data["count"] == 11
    assert all(g["classification"] == "rational" for g in data["graphs"])


def test_user_error_exit_code(capsys):
    code, out, err = invoke(capsys, "classify", "no_such_fixture.json")
    assert code == 1 and "error:" in err
    code, out, err = invoke(capsys, "ellseq", "g_pole")
    assert code == 1
    code, out, err = invoke(capsys, "strata", "g_app", "--lprime", "bogus")
    assert code == 1
    code, out, err = invoke(capsys, "enumerate", "--euler-max", "0")
    assert code == 1


def test_cap_env_validation(capsys, monkeypatch):
    monkeypatch.setenv("RESGRAPH_ENUM_CAP", "abc")
    code, out, err = invoke(capsys, "enumerate", "--max-vertices", "2")
    assert code == 1 and "RESGRAPH_ENUM_CAP" in err
    monkeypatch.setenv("RESGRAPH_ENUM_CAP", "-5")
    code, out, err = invoke(capsys, "enumerate", "--max-vertices", "2")
    assert code == 1


def test_cap_env_resource_exit(capsys, monkeypatch):
    monkeypatch.setenv("RESGRAPH_ENUM_CAP", "2")
    code, out, err = invoke(capsys, "enumerate", "--max-vertices", "4")
    assert code == 3 and "resource cap" in err


def test_bad_subcommand(capsys):
    code, out, err = invoke(capsys, "frobnicate", "g_app")
    assert code == 1
