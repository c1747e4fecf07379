"""Problem datum: geometry, potential, boundary and transmission coefficients.

The equation is ``-y'' + q(x) y = lam y`` on ``[a, c) U (c, b]`` with

* left condition      ``alpha10 y(a) + alpha11 y'(a) = 0``
* right condition     ``alpha20 y(b) - alpha21 y'(b) + lam (alpha20p y(b) - alpha21p y'(b)) = 0``
* two transmission conditions at ``c`` given by the rows of the 2x4 matrix
  ``T = [[b10-, b11-, b10+, b11+], [b20-, b21-, b20+, b21+]]`` acting on
  ``(y(c-), y'(c-), y(c+), y'(c+))``.

``Delta_kj`` denotes the determinant of columns ``k`` and ``j`` of ``T``
(1-based).  The problem is admissible when ``Delta12 > 0`` and
``Delta34 > 0``; the Hilbert-space machinery additionally needs
``Delta0 = alpha21 alpha20p - alpha20 alpha21p > 0``.
"""
from __future__ import annotations

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import (BadGeometry, NonPositiveMinors, NonpositiveDelta0,
                     OutOfSide, ZeroBoundaryRow)

logger = logging.getLogger(__name__)

LEFT = "left"
RIGHT = "right"
FULL = "full"
SPECTRUM_ONLY = "spectrum_only"


@dataclass(frozen=True)
class Interval:
    a: float
    c: float
    b: float

    def side_bounds(self, side):
        if side == LEFT:
            return self.a, self.c
        if side == RIGHT:
            return self.c, self.b
        raise ValueError(f"unknown side {side!r}")


def _horner(coeffs, x):
    acc = 0.0 * x
    for ck in reversed(coeffs):
        acc = acc * x + ck
    return acc


@dataclass(frozen=True)
class Potential:
    """Piecewise potential, one function per side.

    Coefficients are ascending-degree polynomial coefficients.  An arbitrary
    real evaluator may be supplied per side via ``left_func``/``right_func``;
    it then takes precedence over the coefficients (which are still used
    when writing configuration files).
    """

    left_coeffs: tuple = (0.0,)
    right_coeffs: tuple = (0.0,)
    left_func: Optional[Callable[[float], float]] = None
    right_func: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        for name in ("left_coeffs", "right_coeffs"):
            coeffs = tuple(float(v) for v in getattr(self, name))
            if not coeffs:
                raise ValueError(f"{name} must be nonempty")
            object.__setattr__(self, name, coeffs)

    @property
    def is_polynomial(self):
        return self.left_func is None and self.right_func is None

    def coeffs(self, side):
        return self.left_coeffs if side == LEFT else self.right_coeffs

    def func(self, side):
        """Scalar/array evaluator for one side (no range check)."""
        custom = self.left_func if side == LEFT else self.right_func
        if custom is not None:
            return custom
        coeffs = self.coeffs(side)
        if all(v == 0.0 for v in coeffs):
            return _zero
        if len(coeffs) == 1:
            const = coeffs[0]
            return lambda x: const + 0.0 * x
        return lambda x: _horner(coeffs, x)


def _zero(x):
    return 0.0 * x


@dataclass(frozen=True)
class BoundaryLeft:
    alpha10: float
    alpha11: float


@dataclass(frozen=True)
class BoundaryRight:
    alpha20: float
    alpha21: float
    alpha20p: float
    alpha21p: float

    @property
    def delta0(self):
        return self.alpha21 * self.alpha20p - self.alpha20 * self.alpha21p


@dataclass(frozen=True)
class Transmission:
    row1: tuple
    row2: tuple

    def __post_init__(self):
        for name in ("row1", "row2"):
            row = tuple(float(v) for v in getattr(self, name))
            if len(row) != 4:
                raise ValueError(f"transmission {name} needs 4 entries, got {len(row)}")
            object.__setattr__(self, name, row)

    @property
    def matrix(self):
        return np.array([self.row1, self.row2])


@dataclass(frozen=True)
class Minors:
    d12: float
    d13: float
    d14: float
    d23: float
    d24: float
    d34: float

    def plucker_defect(self):
        return self.d12 * self.d34 - self.d13 * self.d24 + self.d14 * self.d23


def compute_minors(t: Transmission) -> Minors:
    """All six 2x2 column minors of the transmission matrix."""
    r1, r2 = t.row1, t.row2

    def det(k, j):
        return r1[k] * r2[j] - r1[j] * r2[k]

    return Minors(d12=det(0, 1), d13=det(0, 2), d14=det(0, 3),
                  d23=det(1, 2), d24=det(1, 3), d34=det(2, 3))


@dataclass(frozen=True)
class Problem:
    interval: Interval
    potential: Potential
    left: BoundaryLeft
    right: BoundaryRight
    transmission: Transmission
    minors: Optional[Minors] = None
    mode: str = FULL
    warnings: tuple = field(default=(), compare=True)

    # shorthands used all over the numerics
    @property
    def a(self):
        return self.interval.a

    @property
    def b(self):
        return self.interval.b

    @property
    def c(self):
        return self.interval.c

    @property
    def delta0(self):
        return self.right.delta0

    @property
    def validated(self):
        return self.minors is not None

    def side_of(self, x):
        if x < self.c:
            return LEFT
        if x > self.c:
            return RIGHT
        raise ValueError("x = c belongs to neither side")

    def q(self, side):
        return self.potential.func(side)


def validate_problem(p: Problem, mode: str = FULL) -> Problem:
    """Check admissibility and return a copy with ``minors`` populated.

    In ``spectrum_only`` mode ``Delta0 = 0`` is tolerated and recorded in
    ``warnings``; a negative ``Delta0`` is always rejected because it
    breaks the inner-product structure even for eigenvalue work.
    """
    if mode not in (FULL, SPECTRUM_ONLY):
        raise ValueError(f"unknown mode {mode!r}")
    a, c, b = p.a, p.c, p.b
    if not all(math.isfinite(v) for v in (a, c, b)) or not a < c < b:
        raise BadGeometry(f"need finite a < c < b, got a={a}, c={c}, b={b}")
    if p.left.alpha10 == 0.0 and p.left.alpha11 == 0.0:
        raise ZeroBoundaryRow("(alpha10, alpha11) must not both vanish")
    minors = compute_minors(p.transmission)
    if not (minors.d12 > 0.0 and minors.d34 > 0.0):
        raise NonPositiveMinors(
            f"transmission minors must satisfy Delta12 > 0 and Delta34 > 0 "
            f"(got Delta12={minors.d12}, Delta34={minors.d34})")
    warnings = []
    d0 = p.right.delta0
    if mode == FULL and not d0 > 0.0:
        raise NonpositiveDelta0(f"Delta0 must be positive in full mode, got {d0}")
    if mode == SPECTRUM_ONLY:
        if d0 < 0.0:
            raise NonpositiveDelta0(f"Delta0 must be nonnegative, got {d0}")
        if d0 == 0.0:
            warnings.append("delta0_zero: lambda-free right boundary condition; "
                            "Hilbert-space operations unavailable")
            logger.warning("Delta0 = 0: only spectral computations are available")
    return dataclasses.replace(p, minors=minors, mode=mode, warnings=tuple(warnings))


def make_problem(a, c, b, *, q_left=(0.0,), q_right=(0.0,), alpha10, alpha11,
                 alpha20, alpha21, alpha20p, alpha21p, row1, row2,
                 mode=FULL) -> Problem:
    """Build and validate a problem in one call.

    ``q_left``/``q_right`` are either coefficient sequences or callables.
    """
    pot_kw = {}
    for side, q in (("left", q_left), ("right", q_right)):
        if callable(q):
            pot_kw[f"{side}_func"] = q
        else:
            pot_kw[f"{side}_coeffs"] = tuple(q)
    raw = Problem(
        interval=Interval(float(a), float(c), float(b)),
        potential=Potential(**pot_kw),
        left=BoundaryLeft(float(alpha10), float(alpha11)),
        right=BoundaryRight(float(alpha20), float(alpha21), float(alpha20p), float(alpha21p)),
        transmission=Transmission(row1, row2),
    )
    return validate_problem(raw, mode)


def eval_potential(p: Problem, side: str, x):
    lo, hi = p.interval.side_bounds(side)
    xa = np.asarray(x)
    if np.any(xa < lo) or np.any(xa > hi):
        raise OutOfSide(f"x={x} outside the closed {side} side [{lo}, {hi}]")
    return p.q(side)(x)


# -- boundary and transmission functionals, acting on (value, derivative) -----

def tau1(p: Problem, y, dy):
    return p.left.alpha10 * y + p.left.alpha11 * dy


def t_b(p: Problem, y, dy):
    return p.right.alpha20 * y - p.right.alpha21 * dy


def t_b_prime(p: Problem, y, dy):
    return p.right.alpha20p * y - p.right.alpha21p * dy


def tau2(p: Problem, lam, y, dy):
    return t_b(p, y, dy) + lam * t_b_prime(p, y, dy)


def tau_transmission(p: Problem, y_minus, dy_minus, y_plus, dy_plus):
    """Residuals (tau3, tau4) of the two transmission conditions."""
    r1, r2 = p.transmission.row1, p.transmission.row2
    t3 = r1[0] * y_minus + r1[1] * dy_minus + r1[2] * y_plus + r1[3] * dy_plus
    t4 = r2[0] * y_minus + r2[1] * dy_minus + r2[2] * y_plus + r2[3] * dy_plus
    return t3, t4


def state_scale(*values):
    """max(|v|..., 1): the normalisation used for residual bounds."""
    return max([1.0] + [abs(v) for v in values])


def minors_array(m: Minors) -> Sequence[float]:
    return (m.d12, m.d13, m.d14, m.d23, m.d24, m.d34)
