"""CLI surface: parsing, reports, exit codes, determinism."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "orelab"]

UPPER2X2 = {
    "coeff_ring": "rationals",
    "rank": 3,
    "basis_names": ["e11", "e12", "e22"],
    "structure_constants": [[0, 0, 0, "1"], [0, 1, 1, "1"], [1, 2, 1, "1"], [2, 2, 2, "1"]],
    "derivations": {"inner_e11": [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "0"]]},
}


def run_cli(*args, cwd=None):
    return subprocess.run(
        CLI + list(args), capture_output=True, text=True, cwd=cwd, timeout=120
    )


@pytest.fixture
def upper2x2_file(tmp_path):
    path = tmp_path / "upper2x2.json"
    path.write_text(json.dumps(UPPER2X2))
    return str(path)


# --- words-analyze -------------------------------------------------------

def test_words_analyze_weight_and_validity():
    res = run_cli("words-analyze", "2,1", "--k", "1")
    assert res.returncode == 0
    assert "weight = 4" in res.stdout
    assert "k_valid = False" in res.stdout


def test_words_analyze_zero_word():
    res = run_cli("words-analyze", "0,0,0", "--k", "1")
    assert res.returncode == 0
    assert "weight = 0" in res.stdout
    assert "k_valid = True" in res.stdout


def test_words_analyze_decreasing():
    res = run_cli("words-analyze", "3,2,1", "--decreasing", "2")
    assert res.returncode == 0
    assert "decreasing.prefix = 3" in res.stdout
    assert "decreasing.block1 = 2" in res.stdout
    assert "decreasing.block2 = 1" in res.stdout


def test_words_analyze_parse_error_position():
    res = run_cli("words-analyze", "1,x,3")
    assert res.returncode == 2
    assert "item 2" in res.stderr


def test_words_analyze_json():
    res = run_cli("words-analyze", "2,1", "--k", "1", "--json")
    assert res.returncode == 0
    doc = json.loads(res.stdout)
    assert doc["weight"] == 4 and doc["k_valid"] is False


# --- words-bounds --------------------------------------------------------

def test_words_bounds_base_case():
    res = run_cli("words-bounds", "--d", "0", "--k", "1", "--eps", "1", "--b", "1")
    assert res.returncode == 0
    assert "M = 1" in res.stdout and "N = 1" in res.stdout


def test_words_bounds_d1():
    res = run_cli("words-bounds", "--d", "1", "--k", "1", "--eps", "1", "--b", "1")
    assert res.returncode == 0
    assert "M = 9" in res.stdout and "N = 11" in res.stdout


def test_words_bounds_oracle_comparison():
    res = run_cli("words-bounds", "--d", "2", "--k", "1", "--eps", "1", "--b", "1",
                  "--oracle", "4", "3")
    assert res.returncode == 0
    assert "oracle.minimal_N = 1" in res.stdout
    assert "oracle.le_bound = True" in res.stdout


def test_words_bounds_insufficient_data():
    res = run_cli("words-bounds", "--d", "2", "--k", "1", "--eps", "1", "--b", "1",
                  "--no-tail")
    assert res.returncode == 2
    assert "b_" in res.stderr


def test_words_bounds_bad_eps():
    res = run_cli("words-bounds", "--d", "1", "--k", "1", "--eps", "3/2", "--b", "1")
    assert res.returncode == 2


def test_words_bounds_budget_exceeded():
    res = run_cli("words-bounds", "--d", "2", "--k", "3", "--eps", "1", "--b", "2,3",
                  "--oracle", "12", "9")
    assert res.returncode == 3


# --- file-driven commands ---------------------------------------------------

def test_radical_check_trace_form(upper2x2_file):
    res = run_cli("radical-check", upper2x2_file, "--derivation", "inner_e11")
    assert res.returncode == 0
    assert "radical.basis0 = 1*e12" in res.stdout
    assert "stable = True" in res.stdout


def test_radical_check_zero_derivation_default(upper2x2_file):
    res = run_cli("radical-check", upper2x2_file)
    assert res.returncode == 0
    assert "param.derivation = zero" in res.stdout
    assert "stable = True" in res.stdout


def test_radical_check_missing_file():
    res = run_cli("radical-check", "/nonexistent/file.json")
    assert res.returncode == 2


def test_radical_check_unknown_derivation(upper2x2_file):
    res = run_cli("radical-check", upper2x2_file, "--derivation", "nope")
    assert res.returncode == 2
    assert "nope" in res.stderr


def test_ore_nilpotency_with_bound(tmp_path):
    run_cli("examples", "upper3strict", "--dir", str(tmp_path))
    res = run_cli("ore-nilpotency", str(tmp_path / "upper3strict.json"),
                  "--set", "e12 + e23*x", "--bound", "vanish3",
                  "--derivation", "inner_e12", "--T", "e12,e13,e23")
    assert res.returncode == 0
    assert "minimal_N = 2" in res.stdout
    assert "minimal_le_bound = True" in res.stdout


def test_ore_nilpotency_bad_set(tmp_path):
    run_cli("examples", "squarezero", "--dir", str(tmp_path))
    res = run_cli("ore-nilpotency", str(tmp_path / "squarezero.json"),
                  "--set", "x + x^2")
    assert res.returncode == 2
    assert "coefficient" in res.stderr


def test_ore_rewrite(tmp_path):
    run_cli("examples", "upper3strict", "--dir", str(tmp_path))
    res = run_cli("ore-rewrite", str(tmp_path / "upper3strict.json"),
                  "--derivation", "inner_e12", "--head", "e12",
                  "--indices", "e23", "--exponents", "1,0", "--k", "1")
    assert res.returncode == 0
    assert "term0 = 1 | 0,2 | 0 | 1" in res.stdout
    assert "term1 = 1 | 0,2 | 1 | 0" in res.stdout


# --- bundled examples ---------------------------------------------------------

def test_examples_charp(tmp_path):
    res = run_cli("examples", "charp", "--p", "5", "--dir", str(tmp_path))
    assert res.returncode == 0
    assert "stable = False" in res.stdout
    assert "witness.element = 1*t" in res.stdout
    doc = json.loads((tmp_path / "charp_5.json").read_text())
    assert doc["coeff_ring"] == {"prime": 5}
    assert doc["rank"] == 5


def test_examples_upper3strict(tmp_path):
    res = run_cli("examples", "upper3strict", "--dir", str(tmp_path))
    assert res.returncode == 0
    assert "minimal_N = 2" in res.stdout


def test_examples_squarezero(tmp_path):
    res = run_cli("examples", "squarezero", "--dir", str(tmp_path))
    assert res.returncode == 0
    assert "minimal_N = 1" in res.stdout


def test_examples_unknown_name(tmp_path):
    res = run_cli("examples", "nosuch", "--dir", str(tmp_path))
    assert res.returncode == 2


# --- determinism ---------------------------------------------------------------

@pytest.mark.parametrize("args", [
    ("words-analyze", "4,1,3,0,2", "--k", "2", "--b", "2,3,4", "--decreasing", "2"),
    ("words-bounds", "--d", "2", "--k", "1", "--eps", "1/2", "--b", "2,3,4"),
    ("words-bounds", "--d", "1", "--k", "1", "--eps", "1", "--b", "1", "--json"),
])
def test_repeated_runs_identical(args):
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout


def test_examples_runs_identical(tmp_path):
    a = run_cli("examples", "charp", "--p", "3", "--dir", str(tmp_path / "a"))
    b = run_cli("examples", "charp", "--p", "3", "--dir", str(tmp_path / "b"))
    assert a.returncode == b.returncode == 0
    assert a.stdout.replace(str(tmp_path / "a"), "@") == \
        b.stdout.replace(str(tmp_path / "b"), "@")
    assert (tmp_path / "a" / "charp_3.json").read_bytes() == \
        (tmp_path / "b" / "charp_3.json").read_bytes()
