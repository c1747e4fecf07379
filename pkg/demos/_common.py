"""Shared loading for the demo scripts."""
from pathlib import Path

from sturm_transmission import parse_config, parse_rhs

DATA = Path(__file__).resolve().parent / "data"


def load(name):
    return parse_config((DATA / f"{name}.cfg").read_text())


def load_rhs(name):
    return parse_rhs((DATA / f"{name}.cfg").read_text())
