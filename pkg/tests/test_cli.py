"""CLI parsing, rendering, exit codes, JSON schema conformance."""

import json
import os
from pathlib import Path

import jsonschema
import pytest

import jcforge as jf
from jcforge.cli import Request, main, parse_field, parse_matrix, parse_poly, run
from jcforge.errors import NotPrime, ParseError, RaggedRows

from conftest import seeded

A_TEXT = "[[0,t,0,0],[1,0,0,0],[0,0,0,t],[0,0,1,0]]"
B_TEXT = "[[0,0,0,t^2],[1,0,0,0],[0,1,0,0],[0,0,1,0]]"

SCHEMA = json.loads(
    (Path(jf.__file__).parent / "schemas" / "output.schema.json").read_text())


def run_json(args):
    req_out = []
    code = main(args + ["--format", "json"])
    return code


def invoke(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def invoke_json(args, capsys):
    code = main(args + ["--format", "json"])
    out = capsys.readouterr().out
    payload = json.loads(out)
    jsonschema.validate(payload, SCHEMA)
    return code, payload


def test_parse_field():
    assert parse_field("Q") == jf.rationals()
    assert parse_field("GF(2)(t)") == jf.rational_functions(2)
    assert parse_field("GF(5)") == jf.prime_field(5)
    with pytest.raises(NotPrime):
        parse_field("GF(4)")
    with pytest.raises(ParseError):
        parse_field("R")


def test_parse_poly_examples():
    spec = parse_field("GF(2)(t)")
    f = parse_poly("T^2 - t", spec)
    assert f.coeff(0) == jf.parse_element("t", spec)
    assert parse_poly("T", spec) == jf.Poly.variable(spec)
    g = parse_poly("T^2 + (t+1)*T + t", spec)
    assert g.coeff(1) == jf.parse_element("t+1", spec)


def test_parse_matrix_examples():
    spec = parse_field("GF(2)(t)")
    m = parse_matrix("[[0,t],[1,0]]", spec)
    assert m == jf.companion(parse_poly("T^2 - t", spec))
    assert parse_matrix("[[1]]", spec).rows == 1
    with pytest.raises(RaggedRows):
        parse_matrix("[[1,2],[3]]", spec)
    j = parse_matrix('[["0", "t"], ["1", "0"]]', spec, fmt="json")
    assert j == m


def test_zeta_cli(capsys):
    code, out = invoke(["zeta", "--q", "2", "--partition", "[3]"], capsys)
    assert code == 0 and out.strip() == "[2,1]"
    code, payload = invoke_json(["zeta", "--q", "2", "--partition", "[3]"], capsys)
    assert payload["result"] == "[2,1]"


def test_analyze_cli_A(capsys):
    code, payload = invoke_json(
        ["analyze", "--field", "GF(2)(t)", "--f", "T^2 - t",
         "--matrix", A_TEXT], capsys)
    assert code == 0
    assert payload["inv"] == "[1,1]" and payload["exists"] is True
    assert payload["types"] == [{"type": "[2]", "dim": 4},
                                {"type": "[1,1]", "dim": 0}]
    assert payload["q"] == 2 and payload["m"] == 2


def test_analyze_cli_B_exits_1(capsys):
    code, payload = invoke_json(
        ["analyze", "--field", "GF(2)(t)", "--f", "T^2 - t",
         "--matrix", B_TEXT], capsys)
    assert code == 1
    assert payload["exists"] is False and payload["types"] == []


def test_decompose_verify_cycle(capsys, tmp_path):
    code, payload = invoke_json(
        ["decompose", "--field", "GF(2)(t)", "--f", "T^2 - t",
         "--matrix", A_TEXT, "--type", "[2]"], capsys)
    assert code == 0
    s_file = tmp_path / "s.json"
    n_file = tmp_path / "n.json"
    s_file.write_text(json.dumps(payload["s"]))
    n_file.write_text(json.dumps(payload["n"]))
    code, payload = invoke_json(
        ["verify", "--field", "GF(2)(t)", "--f", "T^2 - t", "--matrix", A_TEXT,
         "--s", f"@{s_file}", "--n", f"@{n_file}"], capsys)
    assert code == 0
    assert payload["ok"] is True and payload["typ"] == "[2]"


def test_verify_failure(capsys):
    zero = "[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]"
    code, payload = invoke_json(
        ["verify", "--field", "GF(2)(t)", "--f", "T^2 - t", "--matrix", B_TEXT,
         "--s", B_TEXT, "--n", zero], capsys)
    assert code == 1
    assert payload["ok"] is False and payload["failed"] == "f(s) = 0"


def test_types_cli(capsys):
    code, payload = invoke_json(
        ["types", "--q", "2", "--degf", "2", "--partition", "[1,1]"], capsys)
    assert code == 0
    assert payload["types"] == [{"type": "[2]", "dim": 4},
                                {"type": "[1,1]", "dim": 0}]
    code, payload = invoke_json(
        ["types", "--q", "2", "--partition", "[2]"], capsys)
    assert code == 1 and payload["exists"] is False


def test_table_cli(capsys):
    code, out = invoke(["table", "--q", "2", "--degf", "2", "--m", "6"], capsys)
    assert code == 0
    lines = out.splitlines()
    row = next(l for l in lines if l.startswith("[3,3]"))
    assert "[6]:12" in row
    row = next(l for l in lines if l.startswith("[2,2,1,1]"))
    assert "[4,2]:20" in row and "[3,3]:16" in row
    code, payload = invoke_json(
        ["table", "--q", "2", "--degf", "2", "--m", "6"], capsys)
    assert code == 0 and len(payload["rows"]) == 11


def test_fnf_cli(capsys):
    code, payload = invoke_json(
        ["fnf", "--field", "Q", "--matrix", "[[0,-1],[1,0]]"], capsys)
    assert code == 0
    assert payload["factors"] == ["T^2 + 1"]
    assert payload["F"] == [["0", "-1"], ["1", "0"]]


def test_random_requires_seed(capsys):
    code = main(["decompose", "--field", "GF(2)(t)", "--f", "T^2 - t",
                 "--matrix", A_TEXT, "--type", "[2]", "--random"])
    assert code == 2


def test_random_decompose_cli(capsys):
    code, payload = invoke_json(
        ["decompose", "--field", "GF(2)(t)", "--f", "T^2 - t",
         "--matrix", A_TEXT, "--type", "[2]", "--random", "--seed", "3"], capsys)
    assert code == 0 and payload["type"] == "[2]"


def test_exit_codes(capsys):
    # parse error
    assert main(["analyze", "--field", "GF(4)", "--f", "T", "--matrix", "[[1]]"]) == 2
    # validation error: reducible f
    assert main(["analyze", "--field", "GF(2)", "--f", "T^2 + 1",
                 "--matrix", "[[1,0],[0,1]]"]) == 3
    # no such type
    assert main(["decompose", "--field", "GF(2)(t)", "--f", "T^2 - t",
                 "--matrix", B_TEXT, "--type", "[2]"]) == 1
    # budget exceeded
    assert main(["table", "--q", "2", "--degf", "2", "--m", "31"]) == 4


def test_budget_env_override(capsys, monkeypatch):
    monkeypatch.setenv("JC_FORGE_BUDGET", "32")
    assert main(["table", "--q", "2", "--degf", "2", "--m", "31"]) == 0
    capsys.readouterr()
    monkeypatch.setenv("JC_FORGE_BUDGET", "12")
    assert main(["table", "--q", "2", "--degf", "2", "--m", "20"]) == 4


def test_matrix_file_indirection(capsys, tmp_path):
    path = tmp_path / "mat.txt"
    path.write_text(A_TEXT)
    code, payload = invoke_json(
        ["analyze", "--field", "GF(2)(t)", "--f", "T^2 - t",
         "--matrix", f"@{path}"], capsys)
    assert code == 0 and payload["inv"] == "[1,1]"


def test_run_request_api():
    req = Request(subcommand="zeta", q=3, partition="[3]", fmt="text")
    out, code = run(req)
    assert out == "[1,1,1]" and code == 0


def test_partition_grammar_round_trip():
    rng = seeded(30)
    for _ in range(200):
        parts = sorted((rng.randint(1, 30) for _ in range(rng.randint(0, 6))),
                       reverse=True)
        p = jf.Partition(parts)
        assert jf.parse_partition(str(p)) == p
