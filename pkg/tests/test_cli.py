import csv
import io
import json
import subprocess
import sys

import pytest

from torusasym.cli import dump_json, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_components_csv_matches_table(capsys):
    code, out, _ = run(capsys, "components", "--p", "3", "--q", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [(r["k_minus"], r["k_plus"], r["m"], r["A_diamond"], r["A_triangle"]) for r in rows] == [
        ("1", "7", "3", "1/1", "25/48"),
        ("2", "10", "4", "2/1", "1/12"),
        ("5", "11", "3", "2/1", "1/48"),
    ]
    assert out.endswith("\r\n")


def test_components_tex(capsys):
    code, out, _ = run(capsys, "components", "--p", "3", "--q", "4", "--format", "tex")
    assert code == 0
    assert out.startswith(r"\begin{tabular}")
    assert r"$(1,7)$ & $3$ & $1$ & $\frac{25}{48}$" in out


def test_components_json_round_trip(capsys):
    code, out, _ = run(capsys, "components", "--p", "4", "--q", "7")
    assert code == 0
    doc = json.loads(out)
    assert dump_json(doc) == out
    first = doc["components"][0]
    assert first["A_triangle"] == "169/112"
    assert first["torsion"]["digits"] == 50
    assert len(first["torsion"]["value"].replace(".", "").lstrip("0")) == 50


def test_not_coprime(capsys):
    code, _, err = run(capsys, "components", "--p", "4", "--q", "6")
    assert code == 2
    assert "NotCoprime" in err


@pytest.mark.parametrize("argv", [
    ["invariant", "--p", "2", "--q", "3", "--N", "1"],
    ["invariant", "--p", "2", "--q", "3"],
    ["components", "--p", "2"],
    ["verify", "nonsense"],
    ["components", "--p", "2", "--q", "3", "--digits", "3"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_invariant_both_agrees(capsys):
    code, out, _ = run(capsys, "invariant", "--p", "2", "--q", "3", "--N", "5", "--digits", "30", "--method", "both")
    assert code == 0
    doc = json.loads(out)
    assert doc["agree"] is True
    assert {"expansion", "quadrature", "discrepancy", "discrepancy_threshold"} <= set(doc)


def test_invariant_expansion_fields(capsys):
    code, out, _ = run(capsys, "invariant", "--p", "3", "--q", "5", "--N", "9", "--method", "expansion", "--digits", "40")
    assert code == 0
    exp = json.loads(out)["expansion"]
    assert "tail_truncation_index" in exp
    assert exp["value"]["re"]["digits"] == 40
    assert set(exp["residue_terms"]) == {str(k) for k in range(1, 15)}


def test_series(capsys):
    code, out, _ = run(capsys, "series", "--p", "2", "--q", "3", "--n-max", "3")
    assert code == 0
    assert json.loads(out)["a"] == ["0/1", "4/1", "-184/1", "20172/1"]


def test_growth_csv(capsys):
    code, out, _ = run(capsys, "growth", "--p", "2", "--q", "5", "--jmax", "2", "--format", "csv", "--digits", "20")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["N"] for r in rows] == ["20", "60", "100"]


@pytest.mark.parametrize("argv", [
    ["verify", "table1"],
    ["verify", "main-theorem", "--p", "2", "--q", "3", "--N", "7"],
    ["verify", "residue-theorem", "--p", "4", "--q", "7"],
    ["verify", "chern-simons"],
])
def test_verify_suites_pass(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert "FAIL" not in out


def test_verify_residue_counts(capsys):
    _, out, _ = run(capsys, "verify", "residue-theorem", "--p", "4", "--q", "7")
    assert out.count("PASS") == 9


def test_verify_failure_exit_code(capsys, monkeypatch):
    import torusasym.cli as cli

    bad = dict(cli.TABLE1)
    bad[(3, 4)] = [((1, 7), 3, 1, cli.Fraction(1, 2))] + bad[(3, 4)][1:]
    monkeypatch.setattr(cli, "TABLE1", bad)
    code, out, _ = run(capsys, "verify", "table1")
    assert code == 1
    assert "FAIL T(3,4) (1, 7)" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "a.json"
    code, out, _ = run(capsys, "series", "--p", "2", "--q", "5", "--output", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["knot"] == [2, 5]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "torusasym", "verify", "table1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.strip().endswith("26/26 checks passed")
