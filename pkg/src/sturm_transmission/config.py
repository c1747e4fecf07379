"""Plain-text problem and right-hand-side files.

Problem file::

    # P0: Dirichlet at a, y(b) + lam y'(b) = 0, continuous transmission
    mode = full                 # optional: full | spectrum_only
    [interval]
    a = 0
    c = 1
    b = 2
    [potential]                 # optional, default q = 0 on both sides
    left = 0                    # ascending polynomial coefficients
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

Right-hand-side file::

    f1 = 0+1i                   # real or complex, default 0
    [f.left]
    coeffs = 1
    [f.right]
    coeffs = 1

(``f.left = ...`` / ``f.right = ...`` as top-level keys are accepted as
well.)  Numbers are decimal literals, optionally with an exponent;
complex literals are written ``<re>+<im>i`` or ``<re>-<im>i`` without
spaces.
"""
from __future__ import annotations

import re

from .elements import PolyElement
from .errors import ConfigSyntaxError, MissingKey
from .problem import (BoundaryLeft, BoundaryRight, FULL, Interval, Potential,
                      Problem, SPECTRUM_ONLY, Transmission, validate_problem)

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_NUM_RE = re.compile(rf"^{_NUM}$")
_COMPLEX_RE = re.compile(rf"^({_NUM})([+-]{_UNSIGNED})i$")
_IMAG_RE = re.compile(rf"^({_NUM})i$")
_SECTION_RE = re.compile(r"^\[([A-Za-z0-9_.]+)\]$")
_KEY_RE = re.compile(r"^[A-Za-z0-9_.]+$")

PROBLEM_SCHEMA = {
    "": {"mode"},
    "interval": {"a", "c", "b"},
    "potential": {"left", "right"},
    "boundary.left": {"alpha10", "alpha11"},
    "boundary.right": {"alpha20", "alpha21", "alpha20p", "alpha21p"},
    "transmission": {"row1", "row2"},
}
RHS_SCHEMA = {
    "": {"f1", "f.left", "f.right"},
    "f.left": {"coeffs"},
    "f.right": {"coeffs"},
}


class _Value:
    __slots__ = ("text", "line", "column")

    def __init__(self, text, line, column):
        self.text = text
        self.line = line
        self.column = column


def _sections(text, schema):
    """Split into ``{section: {key: _Value}}``; top-level keys live under ''."""
    out = {"": {}}
    current = ""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        stripped = line.strip()
        if not stripped:
            continue
        indent = len(line) - len(line.lstrip())
        if stripped.startswith("["):
            m = _SECTION_RE.match(stripped)
            if not m:
                raise ConfigSyntaxError(f"malformed section header {stripped!r}", lineno, indent + 1)
            current = m.group(1)
            if current not in schema:
                raise ConfigSyntaxError(f"unknown section [{current}]", lineno, indent + 2)
            if current in out:
                raise ConfigSyntaxError(f"duplicate section [{current}]", lineno, indent + 1)
            out[current] = {}
            continue
        if "=" not in stripped:
            raise ConfigSyntaxError("expected 'key = value'", lineno, indent + 1)
        key_part, value_part = line.split("=", 1)
        key = key_part.strip()
        if not _KEY_RE.match(key):
            raise ConfigSyntaxError(f"invalid key {key!r}", lineno, indent + 1)
        if key not in schema[current]:
            where = f"[{current}]" if current else "top level"
            raise ConfigSyntaxError(f"unknown key {key!r} at {where}", lineno, indent + 1)
        if key in out[current]:
            raise ConfigSyntaxError(f"duplicate key {key!r}", lineno, indent + 1)
        value = value_part.strip()
        column = len(key_part) + 2 + (len(value_part) - len(value_part.lstrip()))
        if not value:
            raise ConfigSyntaxError(f"empty value for {key!r}", lineno, column)
        out[current][key] = _Value(value, lineno, column)
    return out


def _number(v: _Value) -> float:
    if not _NUM_RE.match(v.text):
        raise ConfigSyntaxError(f"not a decimal literal: {v.text!r}", v.line, v.column)
    return float(v.text)


def _numbers(v: _Value, count=None):
    tokens = v.text.split()
    if not tokens:
        raise ConfigSyntaxError("empty coefficient list", v.line, v.column)
    vals = []
    col = v.column
    rest = v.text
    for tok in tokens:
        offset = rest.index(tok)
        col += offset
        vals.append(_number(_Value(tok, v.line, col)))
        col += len(tok)
        rest = rest[offset + len(tok):]
    if count is not None and len(vals) != count:
        raise ConfigSyntaxError(f"expected {count} numbers, got {len(vals)}", v.line, v.column)
    return vals


def parse_scalar(text: str, line=None, column=None):
    """Real or complex literal (``1.5``, ``0+1i``, ``2.5-0.5i``, ``3i``)."""
    text = text.strip()
    if _NUM_RE.match(text):
        return float(text)
    m = _COMPLEX_RE.match(text)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _IMAG_RE.match(text)
    if m:
        return complex(0.0, float(m.group(1)))
    raise ConfigSyntaxError(f"not a real or complex literal: {text!r}", line, column)


def _get(secs, section, key):
    try:
        return secs[section][key]
    except KeyError:
        where = f"[{section}] {key}" if section else key
        raise MissingKey(f"missing {where}") from None


def parse_config(text: str) -> Problem:
    secs = _sections(text, PROBLEM_SCHEMA)
    for section in ("interval", "boundary.left", "boundary.right", "transmission"):
        if section not in secs:
            raise MissingKey(f"missing section [{section}]")
    mode = FULL
    if "mode" in secs[""]:
        v = secs[""]["mode"]
        if v.text not in (FULL, SPECTRUM_ONLY):
            raise ConfigSyntaxError(f"mode must be full or spectrum_only, got {v.text!r}",
                                    v.line, v.column)
        mode = v.text

    def num(section, key):
        return _number(_get(secs, section, key))

    pot = secs.get("potential", {})
    potential = Potential(
        left_coeffs=tuple(_numbers(pot["left"])) if "left" in pot else (0.0,),
        right_coeffs=tuple(_numbers(pot["right"])) if "right" in pot else (0.0,),
    )
    raw = Problem(
        interval=Interval(num("interval", "a"), num("interval", "c"), num("interval", "b")),
        potential=potential,
        left=BoundaryLeft(num("boundary.left", "alpha10"), num("boundary.left", "alpha11")),
        right=BoundaryRight(num("boundary.right", "alpha20"), num("boundary.right", "alpha21"),
                            num("boundary.right", "alpha20p"), num("boundary.right", "alpha21p")),
        transmission=Transmission(_numbers(_get(secs, "transmission", "row1"), 4),
                                  _numbers(_get(secs, "transmission", "row2"), 4)),
    )
    return validate_problem(raw, mode)


def _fmt(x: float) -> str:
    return repr(float(x))


def print_config(p: Problem) -> str:
    """Inverse of :func:`parse_config` for polynomial potentials."""
    if not p.potential.is_polynomial:
        raise ValueError("only polynomial potentials can be written to a file")
    pot = p.potential
    lines = [
        f"mode = {p.mode}",
        "[interval]",
        f"a = {_fmt(p.a)}",
        f"c = {_fmt(p.c)}",
        f"b = {_fmt(p.b)}",
        "[potential]",
        "left = " + " ".join(_fmt(v) for v in pot.left_coeffs),
        "right = " + " ".join(_fmt(v) for v in pot.right_coeffs),
        "[boundary.left]",
        f"alpha10 = {_fmt(p.left.alpha10)}",
        f"alpha11 = {_fmt(p.left.alpha11)}",
        "[boundary.right]",
        f"alpha20 = {_fmt(p.right.alpha20)}",
        f"alpha21 = {_fmt(p.right.alpha21)}",
        f"alpha20p = {_fmt(p.right.alpha20p)}",
        f"alpha21p = {_fmt(p.right.alpha21p)}",
        "[transmission]",
        "row1 = " + " ".join(_fmt(v) for v in p.transmission.row1),
        "row2 = " + " ".join(_fmt(v) for v in p.transmission.row2),
    ]
    return "\n".join(lines) + "\n"


def parse_rhs(text: str) -> PolyElement:
    """Right-hand side ``F = (f, f1)`` with polynomial pieces."""
    secs = _sections(text, RHS_SCHEMA)
    top = secs[""]
    pieces = {}
    for side in ("f.left", "f.right"):
        if side in secs and "coeffs" in secs[side]:
            if side in top:
                v = top[side]
                raise ConfigSyntaxError(f"{side} given twice", v.line, v.column)
            pieces[side] = _numbers(secs[side]["coeffs"])
        elif side in top:
            pieces[side] = _numbers(top[side])
        else:
            raise MissingKey(f"missing {side}")
    f1 = 0.0
    if "f1" in top:
        v = top["f1"]
        f1 = parse_scalar(v.text, v.line, v.column)
    return PolyElement(pieces["f.left"], pieces["f.right"], f1)
