import csv
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from sturm_transmission import parse_config, parse_rhs, print_config
from sturm_transmission.cli import main
from sturm_transmission.errors import (ConfigSyntaxError, MissingKey, NonPositiveMinors,
                                       ProblemValidationError)

from helpers import random_problem
import oracles

P0_TEXT = """\
# Dirichlet at a, y(2) + lam y'(2) = 0, identity coupling
[interval]
a = 0
c = 1
b = 2
[potential]
left = 0
right = 0
[boundary.left]
alpha10 = 1
alpha11 = 0
[boundary.right]
alpha20 = 1
alpha21 = 0
alpha20p = 0
alpha21p = -1
[transmission]
row1 = 1 0 -1 0
row2 = 0 1 0 -1
"""

RHS_ONE = "f1 = 0\n[f.left]\ncoeffs = 1\n[f.right]\ncoeffs = 1\n"


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "P0.cfg").write_text(P0_TEXT)
    (tmp_path / "one.rhs").write_text(RHS_ONE)
    (tmp_path / "boundary.rhs").write_text("f1 = 1\nf.left = 0\nf.right = 0\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def read_csv(path):
    with open(path) as fh:
        return list(csv.reader(fh))


# -- problem files ---------------------------------------------------------------

def test_parse_p0(p0):
    p = parse_config(P0_TEXT)
    assert (p.minors.d12, p.minors.d34, p.delta0) == (1.0, 1.0, 1.0)
    assert p == p0


def test_potential_section_optional(p0):
    text = P0_TEXT.replace("[potential]\nleft = 0\nright = 0\n", "")
    assert parse_config(text) == p0


def test_missing_section():
    text = P0_TEXT.split("[transmission]")[0]
    with pytest.raises(MissingKey):
        parse_config(text)


def test_missing_key():
    with pytest.raises(MissingKey, match="alpha21p"):
        parse_config(P0_TEXT.replace("alpha21p = -1\n", ""))


def test_inadmissible_coupling():
    with pytest.raises(NonPositiveMinors):
        parse_config(P0_TEXT.replace("row2 = 0 1 0 -1", "row2 = 1 0 -1 0"))


@pytest.mark.parametrize("bad, line, column", [
    ("b = 2", "b = two", 5),
    ("b = 2", "b = 2 * 1", 5),
    ("alpha10 = 1", "alpha1O = 1", 1),
    ("[interval]", "[intervals]", 2),
    ("row1 = 1 0 -1 0", "row1 = 1 0 -1", 8),
    ("row1 = 1 0 -1 0", "row1 = 1 0 x 0", 12),
])
def test_syntax_errors_report_position(bad, line, column):
    text = P0_TEXT.replace(bad, line, 1)
    with pytest.raises(ConfigSyntaxError) as info:
        parse_config(text)
    lineno = text.splitlines().index(line) + 1
    assert info.value.line == lineno
    assert info.value.column == column
    assert str(info.value).startswith(f"line {lineno}, column {column}")


def test_duplicate_key():
    with pytest.raises(ConfigSyntaxError, match="duplicate"):
        parse_config(P0_TEXT.replace("c = 1\n", "c = 1\nc = 1.5\n"))


def test_mode_key():
    text = "mode = spectrum_only\n" + P0_TEXT.replace("alpha21p = -1", "alpha21p = 0")
    p = parse_config(text)
    assert p.mode == "spectrum_only" and p.delta0 == 0.0
    with pytest.raises(ProblemValidationError):
        parse_config(P0_TEXT.replace("alpha21p = -1", "alpha21p = 0"))
    with pytest.raises(ConfigSyntaxError):
        parse_config("mode = partial\n" + P0_TEXT)


def test_round_trip_bit_exact(rng, p0, p1):
    problems = [p0, p1] + [random_problem(rng) for _ in range(20)]
    for p in problems:
        assert parse_config(print_config(p)) == p


# -- right-hand sides --------------------------------------------------------------

def test_parse_rhs_constant():
    F = parse_rhs(RHS_ONE)
    assert F.left(0.3) == 1.0 and F.right(1.7) == 1.0 and F.f1 == 0.0


@pytest.mark.parametrize("literal, value", [
    ("0+1i", 1j), ("2.5-0.5i", 2.5 - 0.5j), ("3i", 3j), ("-1e-3", -1e-3),
])
def test_parse_rhs_scalars(literal, value):
    F = parse_rhs(RHS_ONE.replace("f1 = 0", f"f1 = {literal}"))
    assert F.f1 == value


def test_parse_rhs_errors():
    with pytest.raises(ConfigSyntaxError):
        parse_rhs("f1 = 0\n[f.left]\ncoeffs =\n[f.right]\ncoeffs = 1\n")
    with pytest.raises(ConfigSyntaxError):
        parse_rhs(RHS_ONE.replace("f1 = 0", "f1 = 1 + 2i"))
    with pytest.raises(MissingKey):
        parse_rhs("f1 = 0\n[f.left]\ncoeffs = 1\n")


# -- command line ------------------------------------------------------------------

def test_validate(capsys, workdir):
    code, out, _ = run(capsys, "validate", workdir / "P0.cfg")
    assert code == 0 and "Delta0 = 1" in out


def test_eigs_matches_oracle(capsys, workdir):
    out_path = workdir / "eigs.csv"
    code, _, _ = run(capsys, "eigs", workdir / "P0.cfg", "--min", 0, "--max", 30, "--out", out_path)
    assert code == 0
    rows = read_csv(out_path)
    assert rows[0] == ["index", "lambda", "omega_residual"]
    lam = [float(r[1]) for r in rows[1:]]
    expected = [x for x in oracles.p0_positive(6) if x <= 30]
    np.testing.assert_allclose(lam, expected, rtol=1e-8)
    assert [int(r[0]) for r in rows[1:]] == list(range(len(expected)))
    assert not [f for f in os.listdir(workdir) if f.startswith(".tmp")]


def test_csv_is_deterministic(capsys, workdir):
    outs = []
    for name in ("a.csv", "b.csv"):
        run(capsys, "charfn", workdir / "P0.cfg", "--min", -3, "--max", 9, "--n", 13,
            "--out", workdir / name)
        outs.append((workdir / name).read_bytes())
    assert outs[0] == outs[1]
    rows = read_csv(workdir / "a.csv")
    assert rows[0] == ["lambda", "w_minus", "w_plus", "omega"]
    assert len(rows) == 14


def test_green_spot_value(capsys, workdir):
    code, out, _ = run(capsys, "green", workdir / "P0.cfg", "--lambda", 0, "--x", 1.5, "--y", 0.5)
    assert code == 0
    assert abs(float(out) + 0.125) <= 1e-12


def test_green_grid(capsys, workdir):
    code, out, _ = run(capsys, "green", workdir / "P0.cfg", "--lambda", "0+1i", "--nx", 4, "--ny", 3)
    assert code == 0
    lines = out.strip().splitlines()
    # cell centres; the row y = c is skipped
    assert lines[0] == "x,y,G_re,G_im" and len(lines) == 1 + 4 * 2


def test_green_at_eigenvalue_fails(capsys, workdir):
    lam1 = oracles.p0_positive(1)[0]
    code, _, err = run(capsys, "green", workdir / "P0.cfg", "--lambda", repr(float(lam1)),
                       "--x", 1.5, "--y", 0.5)
    assert code == 1
    assert "AtEigenvalue" in err and len(err.strip().splitlines()) == 1


def test_eigfun(capsys, workdir):
    code, out, _ = run(capsys, "eigfun", workdir / "P0.cfg", "--index", 1, "--samples", 11)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    assert rows[0] == ["x", "u", "du"]
    assert rows[-1][0] == "Tb_prime"
    assert len(rows) == 1 + 22 + 1
    # index 1 counted from -100 is the first positive eigenvalue: one sign on (0, 2)
    u = np.array([float(r[1]) for r in rows[1:-1]])
    assert np.all(u[1:] > 0)
    assert float(rows[-1][1]) == pytest.approx(float(rows[-2][2]))   # T'_b u = u'(2)


def test_eigfun_index_out_of_range(capsys, workdir):
    code, _, err = run(capsys, "eigfun", workdir / "P0.cfg", "--index", 5,
                       "--min", 0, "--max", 10)
    assert code == 2 and "out of range" in err


def test_resolve(capsys, workdir):
    code, out, _ = run(capsys, "resolve", workdir / "P0.cfg", "--lambda", 0,
                       "--rhs", workdir / "boundary.rhs", "--samples", 5)
    assert code == 0
    rows = list(csv.reader(out.splitlines()))
    body = rows[1:-1]
    x = np.array([float(r[0]) for r in body])
    np.testing.assert_allclose([float(r[1]) for r in body], x / 2, atol=1e-12)
    assert rows[-1][0] == "second_component" and float(rows[-1][1]) == pytest.approx(0.5)


def test_resolve_complex(capsys, workdir):
    code, out, _ = run(capsys, "resolve", workdir / "P0.cfg", "--lambda", "1+1i",
                       "--rhs", workdir / "one.rhs", "--samples", 3)
    assert code == 0
    assert out.splitlines()[0] == "x,Y_re,Y_im,dY_re,dY_im"


def test_check(capsys, workdir):
    code, out, _ = run(capsys, "check", workdir / "P0.cfg")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7 and all(line.startswith("PASS") for line in lines)


def test_tolerance_flags(capsys, workdir):
    code, out, _ = run(capsys, "eigs", workdir / "P0.cfg", "--min", 0, "--max", 2,
                       "--tol-lambda", 1e-4, "--abs-tol", 1e-8, "--rel-tol", 1e-6)
    assert code == 0
    lam = float(out.splitlines()[1].split(",")[1])
    assert abs(lam - oracles.p0_positive(1)[0]) <= 1e-3


@pytest.mark.parametrize("argv", [
    ["eigs", "missing.cfg", "--min", "0", "--max", "1"],
    ["eigs", "{cfg}", "--min", "3", "--max", "1"],
    ["eigs", "{cfg}"],
    ["frobnicate"],
    ["green", "{cfg}", "--lambda", "zero", "--x", "1.5", "--y", "0.5"],
    ["green", "{cfg}", "--lambda", "0"],
])
def test_usage_errors(argv, capsys, workdir):
    argv = [a.format(cfg=workdir / "P0.cfg") for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_parse_error_exit_code(capsys, workdir):
    bad = workdir / "bad.cfg"
    bad.write_text(P0_TEXT.replace("b = 2", "b = two"))
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "line 5, column 5" in err and len(err.strip().splitlines()) == 1


def test_module_entry_point(workdir):
    proc = subprocess.run([sys.executable, "-m", "sturm_transmission.cli", "green",
                           str(Path(workdir) / "P0.cfg"), "--lambda", "0", "--x", "0.5", "--y", "1.5"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert abs(float(proc.stdout) + 0.125) <= 1e-12
