from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from gwmax.cli import main
from gwmax.qz_group import generate, parse_element


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "a.txt"
    p.write_text("3 2\n3 0\n0 3\n2 1\n")
    return p


def test_compute_smith_enumerate(capsys):
    code, out, _ = run(capsys, "compute", "x^3+y^3+x^2*y", "--algorithm", "smith", "--enumerate")
    assert code == 0
    assert "generators: (1/3, 1/3)" in out
    assert "order: 3" in out
    assert "elements: (0, 0), (1/3, 1/3), (2/3, 2/3)" in out
    assert "weights: (1/3, 1/3)" in out


def test_compute_fermat_order(capsys):
    code, out, _ = run(capsys, "compute", "x^3+y^3", "--algorithm", "smith")
    assert code == 0 and "order: 9" in out
    assert "elements" not in out


def test_compute_matrix_submatrix_json(capsys, example_file):
    code, out, _ = run(capsys, "compute", "--matrix", str(example_file), "--algorithm", "submatrix", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["algorithm"] == "submatrix"
    assert data["order"] == 3
    assert data["elements"] == [["0", "0"], ["1/3", "1/3"], ["2/3", "2/3"]]
    assert data["submatrices_visited"] == 2 and data["early_exit"] is True
    assert data["invariant_factors"] is None


def test_json_roundtrip_regenerates_group(capsys):
    code, out, _ = run(capsys, "compute", "x^4 + y^4 + x^2*y^2", "--json", "--enumerate")
    data = json.loads(out)
    assert set(data) >= {"generators", "invariant_factors", "order", "elements", "algorithm", "timing_ms"}
    gens = [parse_element("(" + ", ".join(g) + ")") for g in data["generators"]]
    G = generate(2, gens)
    assert [g.to_strings() for g in G.elements] == data["elements"]
    prod = 1
    for a in data["invariant_factors"]:
        prod *= a
    assert prod == data["order"] == len(G)


def test_compute_oracle(capsys):
    code, out, _ = run(capsys, "compute", "x^3+y^3+x^2*y", "--algorithm", "oracle")
    assert code == 0 and "order: 3" in out


def test_compute_not_admissible(capsys):
    code, _, err = run(capsys, "compute", "x^2 + y^2 + x*y")
    assert code == 2
    assert "no_cross_terms" in err and "--force" in err


def test_compute_force(capsys):
    code, out, _ = run(capsys, "compute", "x^2 + y^2 + x*y", "--force")
    assert code == 0 and "order:" in out


def test_compute_parse_error(capsys):
    code, _, err = run(capsys, "compute", "x^3 + + y")
    assert code == 2 and "position" in err


def test_compute_needs_input(capsys):
    code, _, err = run(capsys, "compute")
    assert code == 2


def test_compute_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "compute", "--matrix", str(tmp_path / "nope.txt"))
    assert code == 2


def test_compute_cap_names_flag(capsys):
    code, _, err = run(capsys, "compute", "x^40 + y^41", "--algorithm", "oracle", "--cap-oracle", "100")
    assert code == 3 and "--cap-oracle" in err
    code, _, err = run(capsys, "compute", "x^40 + y^41", "--enumerate", "--cap-group", "100")
    assert code == 3 and "--cap-group" in err


def test_compute_timeout(capsys):
    code, _, err = run(capsys, "compute", "x1^8+x2^8+x3^8+x4^8+x1^4*x2^4+x2^4*x3^4+x3^4*x4^4+x4^4*x1^4",
                       "--algorithm", "submatrix", "--timeout", "0")
    assert code == 4 and "--timeout" in err


def test_compute_warning(capsys):
    code, out, _ = run(capsys, "compute", "x + y^3", "--json")
    assert json.loads(out)["warnings"] == ["weight q1 = 1 exceeds 1/2"]


def test_snf_example(capsys, example_file):
    code, out, _ = run(capsys, "snf", str(example_file), "--verify")
    assert code == 0
    assert "invariant factors: 1 3" in out
    assert "verify: pass" in out


@pytest.mark.parametrize(
    "body, factors",
    [("2 2\n1 0\n0 1\n", [1, 1]), ("2 2\n2 1\n1 2\n", [1, 3]), ("2 2\n-2 1\n1 2\n", [1, 5])],
)
def test_snf_json(capsys, tmp_path, body, factors):
    p = tmp_path / "m.txt"
    p.write_text(body)
    code, out, _ = run(capsys, "snf", str(p), "--json", "--verify")
    data = json.loads(out)
    assert code == 0 and data["invariant_factors"] == factors and data["verified"] is True


def test_snf_rank_deficient(capsys, tmp_path):
    p = tmp_path / "m.txt"
    p.write_text("2 2\n1 2\n2 4\n")
    code, _, err = run(capsys, "snf", str(p))
    assert code == 2 and "rank" in err


def test_bench_n4(capsys, tmp_path):
    out_path = tmp_path / "bench.csv"
    code, _, _ = run(capsys, "bench", "--n", "4", "-o", str(out_path))
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_path.read_text())))
    assert rows[0]["n"] == "4" and rows[0]["m"] == "8" and rows[0]["norm_a"] == "8"
    assert rows[0]["submatrices_visited"] == "70"
    assert rows[0]["early_exit"] == "false"
    assert rows[0]["group_order"] == "512"


def test_bench_odd_n(capsys):
    code, _, err = run(capsys, "bench", "--n", "5")
    assert code == 2 and "even" in err


def test_monomials(capsys):
    code, out, _ = run(capsys, "monomials", "1/3", "1/3")
    assert code == 0
    assert out.splitlines() == ["(0, 3)", "(1, 2)", "(2, 1)", "(3, 0)", "count: 4"]


def test_monomials_formula(capsys):
    code, out, _ = run(capsys, "monomials", "1/2", "1/2", "--formula")
    assert code == 0
    assert "count: 3" in out and "C(3, 2) = 3: match" in out


def test_monomials_single_and_cap(capsys):
    code, out, _ = run(capsys, "monomials", "1/2")
    assert out.splitlines() == ["(2)", "count: 1"]
    code, _, err = run(capsys, "monomials", "1/6", "1/6", "1/6", "--cap-monomials", "5")
    assert code == 3 and "--cap-monomials" in err


def test_monomials_bad_weight(capsys):
    code, _, err = run(capsys, "monomials", "abc")
    assert code == 2


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "x^3+y^3")
    assert code == 0 and "decomposition: Fermat[x](3) + Fermat[y](3)" in out
    code, out, _ = run(capsys, "classify", "x^2*y+y^2*x")
    assert code == 0 and "Loop: variables (x, y) exponents (2, 2)" in out


def test_classify_noninvertible(capsys):
    code, _, err = run(capsys, "classify", "x^3+y^3+x^2*y")
    assert code == 2 and "3 monomials, 2 variables" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gwmax", "compute", "x^3+y^3"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and "order: 9" in proc.stdout
