"""The command-line interface, driven in-process.

Each call below is what ``sturm-transmission <args>`` does in a shell.
"""
import sys
import tempfile
from pathlib import Path

from sturm_transmission.cli import main

from _common import DATA

P0, P1, RHS = (str(DATA / n) for n in ("P0.cfg", "P1.cfg", "rhs_one.cfg"))


def run(*argv):
    print("\n$ sturm-transmission", " ".join(a if "/" not in a else Path(a).name for a in argv),
          flush=True)
    code = main(list(argv))
    sys.stdout.flush()
    print(f"[exit {code}]", flush=True)


run("validate", P1)
run("eigs", P0, "--min", "-5", "--max", "40")
run("green", P0, "--lambda", "0", "--x", "1.5", "--y", "0.5")
run("resolve", P0, "--lambda", "1+1i", "--rhs", RHS, "--samples", "3")

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "charfn.csv"
    run("charfn", P1, "--min", "-2", "--max", "10", "--n", "7", "--out", str(out))
    print(out.read_text())

run("check", P1)
run("green", P0, "--lambda", "1.2200988363236647", "--x", "1.5", "--y", "0.5")
