import json
import subprocess
import sys

import pytest

from theta_cert.cli import main


def run(*argv):
    lines = []
    code = main(list(argv), out=lines.append)
    return code, "\n".join(lines)


def run_json(*argv):
    code, text = run("--format", "json", *argv)
    return code, json.loads(text), text


@pytest.mark.parametrize(
    "argv,code",
    [
        (["tables", "--validate"], 0),
        (["tables", "--list"], 0),
        (["certify", "--target", "theta3", "--n", "20"], 0),
        (["certify", "--target", "theta3", "--n", "12"], 0),
        (["certify", "--target", "theta2", "--n", "6", "--y", "1", "--primes", "5"], 1),
        (["certify", "--target", "theta2", "--n", "20"], 2),
        (["certify", "--target", "theta3"], 2),
        (["verify", "--tau", "0,2", "--prec", "192", "--identities"], 0),
        (["verify", "--tau", "0,1", "--prec", "192", "--n", "7", "--target", "theta3"], 0),
        (["verify", "--tau", "0.2,1", "--product-form", "5"], 0),
        (["verify", "--tau", "0,-1", "--identities"], 2),
        (["verify", "--tau", "0,1", "--n", "13"], 2),
        (["verify", "--tau", "0,1", "--prec", "5000"], 2),
    ],
)
def test_exit_code_matrix(argv, code):
    assert run(*argv)[0] == code


def test_tables_validate_json():
    code, rep, _ = run_json("tables", "--validate")
    assert code == 0 and rep["verdict"] == "pass"
    assert rep["inputs"]["odd_entries"] == "5" and rep["inputs"]["pow2_entries"] == "4"


def test_tables_list():
    _, rep, _ = run_json("tables", "--list")
    degs = {r["entry"]: r["deg_x"] for r in rep["results"]}
    assert degs["odd:9"] == "12" and len(degs) == 9


def test_tables_load_bad(tmp_path):
    bad = tmp_path / "bad.mptab"
    bad.write_text("family=odd n=3\n0 0 9\n1 x 2\n")
    code, rep, _ = run_json("tables", "--load", str(bad))
    assert code == 2 and "ParseError" in rep["error"] and "line 3" in rep["error"]
    assert run("tables", "--load", str(tmp_path / "missing.mptab"))[0] == 2


def test_tables_load_good(tmp_path):
    from theta_cert.modular_tables import get_poly, serialize

    f = tmp_path / "p7.mptab"
    f.write_text(serialize(get_poly("odd", 7)))
    code, rep, _ = run_json("tables", "--load", str(f))
    assert code == 0 and rep["results"][0]["deg_x"] == "8"


def test_certify_json_fields():
    code, rep, _ = run_json("certify", "--target", "theta3", "--n", "20")
    r = rep["results"][0]
    assert (r["y0"], r["p"], r["residue"]) == ("1", "2", "1")
    assert r["kind"] == "theta3-4m" and r["backend"]
    int(r["resultant_at_y0"])  # exact decimal string
    code, rep, _ = run_json("certify", "--target", "theta3", "--n", "22", "--y", "1", "--primes", "13")
    assert rep["results"][0]["residue"] == "3"


def test_certify_failure_reports_exhaustion():
    code, rep, _ = run_json("certify", "--target", "theta2", "--n", "6", "--y", "1", "--primes", "5")
    assert code == 1 and rep["verdict"] == "fail"
    assert rep["results"][0]["passed"] is False


def test_verify_identity_count():
    code, rep, _ = run_json("verify", "--tau", "0,2", "--prec", "192", "--identities")
    assert code == 0 and len(rep["results"]) == 8
    assert all(r["contains_zero"] for r in rep["results"])


def test_json_byte_identical():
    argv = ("certify", "--all")
    a = run_json(*argv)[2]
    b = run_json(*argv)[2]
    assert a == b
    v = ("verify", "--tau", "0.3,1.2", "--n", "5")
    assert run_json(*v)[2] == run_json(*v)[2]
    assert "wall_time_ms" not in a
    assert "wall_time_ms" in json.loads(run("--format", "json", "--timing", "tables")[1])


def test_format_after_subcommand():
    code, text = run("tables", "--format", "json")
    assert json.loads(text)["command"] == "tables"


def test_text_output():
    code, text = run("verify", "--tau", "0,1", "--n", "3")
    assert code == 0 and text.startswith("theta-cert verify: PASS")


def test_default_taus_used():
    _, rep, _ = run_json("verify", "--n", "3")
    assert rep["inputs"]["tau"] == ["0,1", "3/10,6/5", "-1/4,9/10"]


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "theta_cert.cli", "--format", "json", "tables"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["verdict"] == "pass"
    proc = subprocess.run([sys.executable, "-m", "theta_cert.cli", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 2
