"""End-to-end tests of the command line, including exit codes."""

from __future__ import annotations

import json

from veroproj.cli import main
from veroproj.families import parse_family
from veroproj.monomials import read_omega


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_omega_text_round_trips(tmp_path, capsys):
    path = tmp_path / "pv.txt"
    code = main(["omega", "pinched(3,5,2)", "--out", str(path)])
    assert code == 0
    omega = read_omega(path)
    expected = parse_family("pinched(3,5,2)").build()
    assert {tuple(m) for m in omega} == {tuple(m) for m in expected}
    assert omega.n == 3 and omega.d == 5


def test_omega_json(capsys):
    code, out, _ = run(capsys, "omega", "pinched(2,3,2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["family"] == "pinched(2,3,2)"
    assert payload["size"] == 9
    assert [1, 1, 1] not in payload["members"]


def test_mingens_text(capsys):
    code, out, _ = run(capsys, "mingens", "complement(2,4; 2 2 0)")
    assert code == 0
    assert "degree 2: 60 minimal generators" in out
    assert "degree 3: 3 minimal generators" in out
    assert "quadratic: no" in out


def test_hilbert_values(capsys):
    code, out, _ = run(capsys, "hilbert", "full(2,2)", "--max-degree", "2")
    assert code == 0
    assert out.splitlines() == ["HF(0) = 1", "HF(1) = 6", "HF(2) = 15"]


def test_normal2(capsys):
    code, out, _ = run(capsys, "normal2", "full(2,3)")
    assert code == 0 and out.strip() == "2-normal"

    code, out, _ = run(capsys, "normal2", "pinched(3,5,2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["two_normal"] is False
    assert sum(payload["witness"]) == 10  # a degree-2k monomial, k = 5


def test_hvec_routes(capsys):
    code, out, _ = run(capsys, "hvec", "group(C(4;0,1,2,3))", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["route"] == "group-slice"
    assert payload["h"] == [1, 6, 9, 0]

    code, out, _ = run(capsys, "hvec", "full(2,2)", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["route"] == "series"
    assert payload["h"] == [1, 3, 0]


def test_gb_text_and_json(capsys):
    code, out, _ = run(capsys, "gb", "full(1,3)")
    assert code == 0
    assert "3 binomials, max degree 2 (quadratic)" in out

    code, out, _ = run(capsys, "gb", "full(1,3)", "--order", "lex : w3 > w2 > w1 > w0", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["max_degree"] >= 2
    assert payload["size"] == len(payload["elements"])


def test_gb_search_outcomes(capsys):
    code, out, _ = run(capsys, "gb-search", "group(C(6;0,1,3))", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "found"
    assert payload["order"]

    code, out, _ = run(capsys, "gb-search", "group(C(5;0,1,2))", "--json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "not-found-within"
    assert payload["impossible"] is True
    assert payload["tried"] == 0  # the degree-3 generator rules the search out upfront
    assert "degree 3" in payload["warning"]


def test_lift_with_certified_basis(capsys):
    code, out, _ = run(
        capsys, "lift", "group(C(4;0,1,3))", "--sizes", "2,1,1",
        "--order", "degrevlex", "--json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 3 and payload["d"] == 4
    assert payload["max_degree"] == 2
    assert payload["basis_size"] == 21

    # malformed sizes and non-group bases are usage errors
    code, _, err = run(capsys, "lift", "group(C(4;0,1,3))", "--sizes", "2,x")
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "lift", "full(2,2)", "--sizes", "2,1,1", "--order", "degrevlex")
    assert code == 2 and "error:" in err


def test_label_subcommand(capsys):
    code, out, _ = run(capsys, "label", "pinched(2,3,2)")
    assert code == 0
    assert "Koszul (proved-by-theorem, pinched-veronese-232-koszul)" in out

    code, out, _ = run(capsys, "label", "pinched(4,3,2)")
    assert code == 0 and "no applicable rule" in out


def test_scenario_exit_codes(capsys):
    code, out, _ = run(capsys, "scenario", "square-complement-table")
    assert code == 0
    assert "overall: pass" in out

    code, out, _ = run(capsys, "scenario", "h-vector-dual-route")
    assert code == 1
    assert "FAIL h-vector-value" in out
    assert "overall: fail" in out

    code, _, err = run(capsys, "scenario", "bogus")
    assert code == 2
    assert "quadratic-surface-gb-search" in err  # the listing names every scenario


def test_survey_usage_and_rows(tmp_path, capsys):
    code, _, err = run(capsys, "survey")
    assert code == 2 and "--d-max" in err

    jsonl = tmp_path / "rows.jsonl"
    code, out, _ = run(
        capsys, "survey", "--d-max", "3", "--no-search",
        "--jsonl", str(jsonl), "--json",
    )
    assert code == 0
    payload = json.loads(out)
    specs = [row["spec"] for row in payload["rows"]]
    assert specs == ["C(2;0,0,1)", "C(3;0,0,1)", "C(3;0,0,2)", "C(3;0,1,2)"]
    assert len(jsonl.read_text().splitlines()) == 4


def test_survey_conjecture_flags(capsys):
    code, out, _ = run(capsys, "survey", "--conjecture1", "C(4;0,1,2,3)")
    assert code == 0
    assert "consistent" in out
    assert out.count("triple") == 4

    code, out, _ = run(capsys, "survey", "--conjecture2", "C(5;0,1,2)")
    assert code == 0
    assert "search impossible-non-quadratic" in out


def test_guard_exit_code(capsys):
    code, _, err = run(capsys, "mingens", "full(3,6)", "--guard", "10")
    assert code == 3 and "guard" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "omega", "bogus(1)")
    assert code == 2 and "error:" in err
