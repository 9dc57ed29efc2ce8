import csv
import io
import subprocess
import sys
from pathlib import Path

import pytest

from qmawtc.cli import fmt, main, write_csv

SPECS = Path(__file__).resolve().parents[1] / "scripts" / "specs"


def spec(name):
    return str(SPECS / f"{name}.json")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    body = "\n".join(line for line in text.splitlines() if not line.startswith("#"))
    return list(csv.DictReader(io.StringIO(body)))


def test_fmt_is_deterministic():
    assert fmt(0.1) == "0.1"
    assert fmt(-0.0) == "0.0"
    assert fmt(float("inf")) == "inf"
    assert fmt(True) == "true"
    assert fmt(None) == ""
    assert write_csv(["a"], [{"a": 1}], ["x=1"]) == "# x=1\na\n1\n"


def test_quantity_command(capsys):
    code, out, _ = run(capsys, "quantity", spec("correlated_bits"), "--name", "I_H", "--a", "X", "--b", "Y1")
    assert code == 0
    rows = table(out)
    assert float(rows[0]["value"]) == pytest.approx(1.5145731728297582)


def test_dmax_reference_is_one_bit(capsys):
    code, out, _ = run(capsys, "quantity", spec("dmax_reference"), "--name", "D_max", "--rho", "0", "--sigma", "1")
    assert code == 0
    assert float(table(out)[0]["value"]) == pytest.approx(1.0)


def test_region_command_row_counts(capsys, tmp_path):
    code, out, _ = run(capsys, "region", spec("random_qbc_pair"), "--name", "eq19")
    assert code == 1  # eq19 needs a point-to-point spec
    code, out, _ = run(capsys, "region", spec("random_pp"), "--name", "eq19")
    assert code == 0 and len(table(out)) == 2
    corners = tmp_path / "c.csv"
    code, out, _ = run(capsys, "region", spec("random_qbc_pair"), "--name", "eq18", "--corners", str(corners))
    assert code == 0 and len(table(out)) == 3
    assert corners.exists()


def test_region_warns_about_vacuous_budget(capsys):
    code, _, err = run(capsys, "region", spec("random_mac"), "--name", "theorem1")
    assert code == 0
    assert "warning:" in err and "vacuous" in err


def test_invalid_params_exit_one(capsys):
    code, out, err = run(capsys, "region", spec("noiseless_pp"), "--name", "theorem2", "--delta2", "0.5")
    assert code == 1 and out == ""
    assert err.startswith("error[validation]: delta2_in_eps2")


def test_cap_exceeded_exit_two(capsys):
    code, out, err = run(capsys, "converge", spec("random_pp"), "--n-max", "9")
    assert code == 2 and out == ""
    assert err.startswith("error[numeric]:")


def test_missing_spec_and_bad_flag(capsys, tmp_path):
    assert run(capsys, "region", str(tmp_path / "none.json"), "--name", "eq19")[0] == 1
    assert run(capsys, "simulate", spec("random_mac"), "--decoder", "nope")[0] == 1
    assert run(capsys, "simulate", spec("random_mac"), "--decoder", "simultaneous", "--sizes", "2,1")[0] == 1


def test_noisy_and_orthogonal_simulations(capsys):
    code, out, _ = run(capsys, "simulate", spec("noisy_mac"), "--decoder", "simultaneous", "--test", "support", "--ensemble")
    rows = table(out)
    assert code == 0 and float(rows[0]["error"]) == 0.75 and float(rows[1]["error"]) == 0.75
    code, out, _ = run(
        capsys, "simulate", spec("orthogonal_mac"), "--decoder", "simultaneous", "--test", "support", "--codebook", "enumerate"
    )
    assert code == 0 and float(table(out)[0]["error"]) <= 1e-12


@pytest.mark.parametrize(
    "name, extra",
    [
        ("random_mac", ["--decoder", "simultaneous", "--trials", "3"]),
        ("random_mac", ["--decoder", "leakage", "--trials", "20"]),
        ("random_pp", ["--decoder", "successive"]),
        ("random_qbc", ["--decoder", "superposition"]),
        ("correlated_bits", ["--decoder", "convex-split", "--a", "X", "--b", "Y1", "--k", "1,2", "--delta", "0.3"]),
        ("random_mac", ["--decoder", "hn-check", "--trials", "10"]),
    ],
)
def test_simulate_is_byte_identical(capsys, tmp_path, name, extra):
    outs = []
    for i in range(2):
        path = tmp_path / f"o{i}.csv"
        code, _, _ = run(capsys, "simulate", spec(name), "--seed", "7", "--out", str(path), *extra)
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"\r" not in outs[0]


def test_eve_silent_leakage_prints_zero(capsys):
    code, out, _ = run(capsys, "simulate", spec("eve_silent_mac"), "--decoder", "leakage", "--trials", "20")
    assert code == 0
    assert all(float(r["mean"]) == 0.0 for r in table(out) if r.get("mean"))


def test_converge_rows(capsys):
    code, out, _ = run(capsys, "converge", spec("noiseless_pp"), "--n-max", "2")
    assert code == 0 and len(table(out)) == 2


def test_console_entry_point(tmp_path):
    res = subprocess.run(
        [sys.executable, "-m", "qmawtc.cli", "region", spec("noiseless_pp"), "--name", "asymptotic"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0
    assert "R1" in res.stdout
