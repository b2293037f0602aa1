import json
import subprocess
import sys

import pytest

from fqkakeya import report
from fqkakeya.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


# -- bounds -------------------------------------------------------------------------

def test_bounds_text(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "3", "--n", "3")
    assert code == 0
    assert "new: 243/25 = 9.720000" in out
    assert "thm3: 15/2 = 7.500000" in out


def test_bounds_csv(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "2", "--n", "2", "--format", "csv")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "q,n,bound_name,numerator,denominator,decimal"
    assert "2,2,sharp_2d,3,1,3.000000" in lines
    assert "2,2,dkss,16,9,1.777778" in lines


def test_bounds_json(capsys):
    code, data = run_json(capsys, "bounds", "--q", "3", "--n", "2")
    assert code == 0
    assert data["new"] == {"numerator": 27, "denominator": 5, "decimal": "5.400000"}
    assert data["sharp_2d"]["numerator"] == 7


def test_bounds_not_prime_power(capsys):
    code, out, err = run(capsys, "bounds", "--q", "6", "--n", "2")
    assert code == 2 and "NotAPrimePower" in err and out == ""


def test_missing_required_flag_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bounds", "--q", "3"])
    assert exc.value.code == 2
    capsys.readouterr()


# -- construct and verify -------------------------------------------------------------

def test_construct_almost(capsys):
    code, data = run_json(capsys, "construct", "--kind", "almost", "--q", "5", "--n", "3")
    assert code == 0
    assert data["size"] == 45 and data["verified"] is True
    assert len(data["set"]["points"]) == 45 and len(data["lines"]) == 25


def test_construct_kakeya(capsys):
    code, data = run_json(capsys, "construct", "--kind", "kakeya", "--q", "3", "--n", "2",
                          "--strategy", "exhaustive")
    assert code == 0 and data["verified"] is True and data["size"] <= 7


def test_construct_even_characteristic(capsys):
    code, _, err = run(capsys, "construct", "--kind", "almost", "--q", "4", "--n", "2")
    assert code == 2 and "EvenCharacteristic" in err


def test_construct_verify_roundtrip(capsys, tmp_path):
    for kind in ("almost", "kakeya"):
        path = tmp_path / f"{kind}.json"
        code, _, _ = run(capsys, "construct", "--kind", kind, "--q", "3", "--n", "3", "--out", str(path))
        assert code == 0
        code, data = run_json(capsys, "verify", str(path))
        assert code == 0
        assert data["almost_kakeya"] is True
        assert data["kakeya"] is (kind == "kakeya")
    # an almost-Kakeya set fails an explicit kakeya requirement
    code, data = run_json(capsys, "verify", str(tmp_path / "almost.json"), "--require", "kakeya")
    assert code == 1 and data["kakeya_failing_direction"] is not None
    assert data["witness_lines_contained"] is True


def _write_set(path, q, n, points):
    path.write_text(json.dumps({"q": q, "modulus": None, "n": n, "points": points}))


def test_verify_full_space_and_single_line(capsys, tmp_path):
    full = tmp_path / "full.json"
    _write_set(full, 3, 2, [[a, b] for a in range(3) for b in range(3)])
    code, data = run_json(capsys, "verify", str(full))
    assert code == 0 and data["kakeya"] and data["almost_kakeya"]
    line = tmp_path / "line.json"
    _write_set(line, 3, 2, [[0, 0], [1, 1], [2, 2]])
    code, data = run_json(capsys, "verify", str(line))
    assert code == 1 and not data["kakeya"] and data["kakeya_failing_direction"] != [1, 1]


def test_verify_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", str(bad))
    assert code == 2 and "cannot read" in err


def test_construct_is_deterministic(capsys):
    argv = ("construct", "--kind", "kakeya", "--q", "5", "--n", "3", "--strategy", "sampled", "--seed", "4")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


# -- audits -----------------------------------------------------------------------------

def test_audit_polytopes(capsys):
    code, data = run_json(capsys, "audit", "polytopes", "--n", "2", "--q", "2", "--r", "4")
    assert code == 0 and data["pass"] is True
    assert data["counts"] == {"parallelogramoid": 4, "cylinder": 8, "simplex1": 6, "simplex2": 2}


def test_audit_minimal2d(capsys):
    code, data = run_json(capsys, "audit", "minimal2d", "--q", "3")
    assert code == 0 and data["minimum"] == 7


def test_audit_zerolemma(capsys, tmp_path):
    mat = tmp_path / "m.txt"
    code, data = run_json(capsys, "audit", "zerolemma", "--q", "2", "--n", "2", "--r", "2",
                          "--emit-matrix", str(mat))
    assert code == 0 and data["kernel_dim"] == 0
    header = mat.read_text().splitlines()[0]
    assert header == "2 2 18 24"


def test_audit_zerolemma_almost(capsys):
    code, data = run_json(capsys, "audit", "zerolemma", "--q", "3", "--n", "2", "--almost")
    assert code == 0 and data["kernel_dim"] == 0 and data["basis_size"] == 99


def test_audit_lemma3(capsys):
    code, data = run_json(capsys, "audit", "lemma3", "--q", "3", "--recursive")
    assert code == 0 and data["kernel_dim"] == 0 and data["basis_size"] == 36


def test_audit_lemma3_rejects_non_kakeya(capsys, tmp_path):
    path = tmp_path / "a.json"
    run(capsys, "construct", "--kind", "almost", "--q", "3", "--n", "3", "--out", str(path))
    code, _, err = run(capsys, "audit", "lemma3", "--q", "3", "--set", str(path))
    assert code == 2 and "NotKakeya" in err


def test_audit_dimv_and_inequality(capsys):
    code, data = run_json(capsys, "audit", "dimv", "--n", "3", "--q", "2")
    assert code == 0 and data["dim3_enumerated"] == 12
    assert data["r=2"] == {"enumerated": 40, "closed_form": 40}
    code, data = run_json(capsys, "audit", "inequality", "--q", "3", "--n", "3")
    assert code == 0 and data["threshold"]["numerator"] == 243


def test_audit_bad_r(capsys):
    code, _, err = run(capsys, "audit", "dimv", "--n", "2", "--q", "3", "--r", "4")
    assert code == 2 and "RNotDivisible" in err


# -- poly ------------------------------------------------------------------------------

def test_poly_commands(capsys):
    code, data = run_json(capsys, "poly", "eval", "--q", "5", "--poly", "x1^2+4*x2", "--point", "2,4")
    assert code == 0 and data["value"] == 0
    code, data = run_json(capsys, "poly", "hasse", "--q", "3", "--poly", "x1^3+x1", "--index", "1")
    assert data["derivative"] == "1"
    code, data = run_json(capsys, "poly", "mult", "--q", "5", "--poly", "x1^2+4*x2", "--point", "0,0",
                          "--line", "0,0:1,0")
    assert code == 0 and data["multiplicity"] == 1 and data["mult_along_line"] == 2
    code, data = run_json(capsys, "poly", "sz", "--q", "3", "--poly", "x1*x2")
    assert code == 0 and (data["sum"], data["bound"], data["ok"]) == (6, 6, True)


def test_poly_zero_polynomial_errors(capsys):
    code, _, err = run(capsys, "poly", "sz", "--q", "3", "--poly", "0", "--nvars", "2")
    assert code == 2 and "ZeroPolynomial" in err
    with pytest.raises(SystemExit):
        main(["poly", "eval", "--q", "3", "--poly", "x1"])
    capsys.readouterr()


def test_poly_parse_error(capsys):
    code, _, err = run(capsys, "poly", "eval", "--q", "3", "--poly", "x1^^2", "--point", "1")
    assert code == 2


# -- report ------------------------------------------------------------------------------

def test_report_small_grid_deterministic(capsys):
    first = run(capsys, "report", "--all", "--qmax", "3", "--nmax", "2")
    second = run(capsys, "report", "--all", "--qmax", "3", "--nmax", "2")
    assert first == second and first[0] == 0
    lines = first[1].splitlines()
    assert lines[0] == ",".join(report.HEADER)
    assert all(line.endswith(",1") for line in lines[1:])


def test_report_parallel_matches_serial():
    serial = report.to_csv(report.run_grid(3, 3, workers=1))
    parallel = report.to_csv(report.run_grid(3, 3, workers=2))
    assert serial == parallel


def test_report_requires_all(capsys):
    code, _, err = run(capsys, "report")
    assert code == 2


def test_entry_point_module():
    proc = subprocess.run([sys.executable, "-m", "fqkakeya", "bounds", "--q", "2", "--n", "3", "--format", "csv"],
                          capture_output=True, text=True, check=True)
    assert "2,3,new,32,9,3.555556" in proc.stdout
