"""Dormand-Prince 5(4) integration of ``-y'' + q(x) y = lam y`` with dense output.

The equation is integrated as the first-order system
``(y, y')' = (y', (q - lam) y)``.  ``lam`` may be real or complex; when
``lam`` and the initial data are real, every quantity is a Python float,
so imaginary parts are not merely zero but absent.

Integration runs natively in either direction (negative steps for
``x1 < x0``).  Each accepted step keeps its seven stage derivatives so
that the solution can be evaluated anywhere through the method's free
fourth-order interpolant.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate._ivp.rk import RK45

from .errors import (MaxStepsExceeded, NonFinite, OutOfSpan, StepUnderflow)
from .problem import Problem
from . import quadrature

# Dormand-Prince tableau and dense-output matrix
_C = [float(v) for v in RK45.C]
_A = [[float(v) for v in row] for row in RK45.A]
_B = [float(v) for v in RK45.B]
_E = [float(v) for v in RK45.E]
_P = np.array(RK45.P, dtype=float)

(c2, c3, c4, c5) = _C[1:5]
a21 = _A[1][0]
a31, a32 = _A[2][:2]
a41, a42, a43 = _A[3][:3]
a51, a52, a53, a54 = _A[4][:4]
a61, a62, a63, a64, a65 = _A[5][:5]
b1, b2, b3, b4, b5, b6 = _B
e1, e2, e3, e4, e5, e6, e7 = _E

SAFETY = 0.9
MIN_FACTOR = 0.2
MAX_FACTOR = 10.0
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class Tolerances:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_steps: int = 100_000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0 and self.max_steps > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class Branch:
    """Dense solution on one side of the interior point.

    ``nodes`` are the step boundaries in integration order, ``states[i]``
    is ``(y, y')`` at ``nodes[i]`` and ``stages[i]`` holds the seven stage
    derivatives of step ``i`` (shape ``(n_steps, 7, 2)``).
    """

    side: str
    lam: complex
    x_start: float
    x_end: float
    nodes: np.ndarray
    states: np.ndarray
    stages: np.ndarray

    @property
    def lo(self):
        return min(self.x_start, self.x_end)

    @property
    def hi(self):
        return max(self.x_start, self.x_end)

    @property
    def n_steps(self):
        return self.stages.shape[0]

    @property
    def is_complex(self):
        return np.iscomplexobj(self.states)

    @property
    def start_state(self):
        return self.states[0, 0], self.states[0, 1]

    @property
    def end_state(self):
        return self.states[-1, 0], self.states[-1, 1]

    def edges(self, lo=None, hi=None):
        """Increasing step boundaries restricted to ``[lo, hi]``."""
        lo = self.lo if lo is None else lo
        hi = self.hi if hi is None else hi
        inner = self.nodes[(self.nodes > lo) & (self.nodes < hi)]
        return np.concatenate([[lo], np.sort(inner), [hi]])

    def __call__(self, x):
        return eval_branch(self, x)

    def value(self, x):
        return eval_branch(self, x)[0]

    def derivative(self, x):
        return eval_branch(self, x)[1]


def _unit_scale(y, dy):
    return max(abs(y), abs(dy), 1.0)


def _rms(e0, e1, s0, s1):
    # hypot avoids overflow of the squares
    return math.hypot(abs(e0) / s0, abs(e1) / s1) * math.sqrt(0.5)


def integrate_ivp(p: Problem, side: str, lam, x0: float, y0, dy0, x1: float,
                  tol: Tolerances = DEFAULT_TOL, fixed_step: Optional[float] = None) -> Branch:
    """Integrate from ``(x0, y0, dy0)`` to ``x1`` on one side of ``c``.

    Parameters
    ----------
    p : Problem
        Supplies the potential of the requested side.
    side : {"left", "right"}
    lam : float or complex
        Spectral parameter.
    x0, x1 : float
        Start and end abscissae, both inside the closed side; ``x1 < x0``
        integrates backwards.
    y0, dy0 : float or complex
        Initial value and derivative.
    tol : Tolerances
        Local error control, ``abs_tol + rel_tol * |state|`` per component.
    fixed_step : float, optional
        Disable error control and use this step length (the last step is
        shortened to land on ``x1``).  Only meant for convergence studies.

    Returns
    -------
    Branch
    """
    lo, hi = p.interval.side_bounds(side)
    for xv in (x0, x1):
        if not lo <= xv <= hi:
            raise OutOfSpan(f"x={xv} outside the closed {side} side [{lo}, {hi}]")
    if x0 == x1:
        raise ValueError("x0 and x1 must differ")

    real = (np.imag(lam) == 0 and np.imag(y0) == 0 and np.imag(dy0) == 0)
    cast = float if real else complex
    lam = cast(np.real(lam)) if real else complex(lam)
    y, dy = cast(np.real(y0) if real else y0), cast(np.real(dy0) if real else dy0)
    q = p.q(side)
    atol, rtol = tol.abs_tol, tol.rel_tol

    direction = 1.0 if x1 > x0 else -1.0
    span = abs(x1 - x0)
    x = float(x0)

    k1y, k1d = dy, (q(x) - lam) * y

    if fixed_step is not None:
        h_abs = abs(float(fixed_step))
    else:
        h_abs = _initial_step(q, lam, x, y, dy, k1y, k1d, direction, span, atol, rtol)

    nodes = [x]
    states = [(y, dy)]
    stages = []
    n_steps = 0
    while direction * (x1 - x) > 0:
        if n_steps >= tol.max_steps:
            raise MaxStepsExceeded(f"more than {tol.max_steps} steps on the {side} side")
        min_step = 10 * _EPS * max(abs(x), 1.0)
        step_rejected = False
        overflowed = False
        while True:
            if h_abs < min_step:
                if overflowed:
                    raise NonFinite(f"solution overflows near x={x}")
                raise StepUnderflow(f"step size fell below {min_step:.3g} at x={x}")
            h = h_abs * direction
            x_new = x + h
            if direction * (x_new - x1) >= 0 or abs(x1 - x_new) < min_step:
                x_new = x1
                h = x_new - x

            # -- stages (unrolled: the state has only two components) --
            y2 = y + h * (a21 * k1y)
            d2 = dy + h * (a21 * k1d)
            k2y, k2d = d2, (q(x + c2 * h) - lam) * y2
            y3 = y + h * (a31 * k1y + a32 * k2y)
            d3 = dy + h * (a31 * k1d + a32 * k2d)
            k3y, k3d = d3, (q(x + c3 * h) - lam) * y3
            y4 = y + h * (a41 * k1y + a42 * k2y + a43 * k3y)
            d4 = dy + h * (a41 * k1d + a42 * k2d + a43 * k3d)
            k4y, k4d = d4, (q(x + c4 * h) - lam) * y4
            y5 = y + h * (a51 * k1y + a52 * k2y + a53 * k3y + a54 * k4y)
            d5 = dy + h * (a51 * k1d + a52 * k2d + a53 * k3d + a54 * k4d)
            k5y, k5d = d5, (q(x + c5 * h) - lam) * y5
            y6 = y + h * (a61 * k1y + a62 * k2y + a63 * k3y + a64 * k4y + a65 * k5y)
            d6 = dy + h * (a61 * k1d + a62 * k2d + a63 * k3d + a64 * k4d + a65 * k5d)
            k6y, k6d = d6, (q(x + h) - lam) * y6
            y_new = y + h * (b1 * k1y + b3 * k3y + b4 * k4y + b5 * k5y + b6 * k6y)
            dy_new = dy + h * (b1 * k1d + b3 * k3d + b4 * k4d + b5 * k5d + b6 * k6d)
            k7y, k7d = dy_new, (q(x_new) - lam) * y_new

            if not (math.isfinite(abs(y_new)) and math.isfinite(abs(dy_new))):
                if fixed_step is not None:
                    raise NonFinite(f"solution overflowed near x={x}")
                h_abs *= MIN_FACTOR
                step_rejected = True
                overflowed = True
                if not (math.isfinite(abs(y)) and math.isfinite(abs(dy))):
                    raise NonFinite(f"solution overflowed near x={x}")
                continue

            if fixed_step is not None:
                break

            err_y = h * (e1 * k1y + e3 * k3y + e4 * k4y + e5 * k5y + e6 * k6y + e7 * k7y)
            err_d = h * (e1 * k1d + e3 * k3d + e4 * k4d + e5 * k5d + e6 * k6d + e7 * k7d)
            s0 = atol + rtol * max(abs(y), abs(y_new))
            s1 = atol + rtol * max(abs(dy), abs(dy_new))
            err = _rms(err_y, err_d, s0, s1)
            if err <= 1.0:
                if err == 0.0:
                    factor = MAX_FACTOR
                else:
                    factor = min(MAX_FACTOR, SAFETY * err ** -0.2)
                if step_rejected:
                    factor = min(1.0, factor)
                h_abs *= factor
                break
            h_abs *= max(MIN_FACTOR, SAFETY * err ** -0.2)
            step_rejected = True

        stages.append(((k1y, k1d), (k2y, k2d), (k3y, k3d), (k4y, k4d),
                       (k5y, k5d), (k6y, k6d), (k7y, k7d)))
        x, y, dy = x_new, y_new, dy_new
        k1y, k1d = k7y, k7d
        nodes.append(x)
        states.append((y, dy))
        n_steps += 1

    dtype = float if real else complex
    if not real and not np.isfinite(np.asarray(states, dtype=complex)).all():
        raise NonFinite("non-finite state")
    return Branch(side=side, lam=lam, x_start=float(x0), x_end=float(x1),
                  nodes=np.asarray(nodes, dtype=float),
                  states=np.asarray(states, dtype=dtype),
                  stages=np.asarray(stages, dtype=dtype))


def _initial_step(q, lam, x, y, dy, f0y, f0d, direction, span, atol, rtol):
    # Hairer, Norsett & Wanner, "Solving ODEs I", II.4
    s0 = atol + rtol * abs(y)
    s1 = atol + rtol * abs(dy)
    d0 = _rms(y, dy, s0, s1)
    d1 = _rms(f0y, f0d, s0, s1)
    h0 = 1e-6 if (d0 < 1e-5 or d1 < 1e-5) else 0.01 * d0 / d1
    h0 = min(h0, span)
    x1 = x + direction * h0
    y1 = y + direction * h0 * f0y
    dy1 = dy + direction * h0 * f0d
    f1y, f1d = dy1, (q(x1) - lam) * y1
    d2 = _rms(f1y - f0y, f1d - f0d, s0, s1) / h0
    if d1 <= 1e-15 and d2 <= 1e-15:
        h1 = max(1e-6, h0 * 1e-3)
    else:
        h1 = (0.01 / max(d1, d2)) ** 0.2
    return min(100 * h0, h1, span)


def _locate(br: Branch, x):
    """Step index and local coordinate theta in [0, 1] for each x."""
    nodes = br.nodes
    n = br.n_steps
    if br.x_end > br.x_start:
        idx = np.searchsorted(nodes, x, side="right") - 1
    else:
        idx = np.searchsorted(-nodes, -x, side="right") - 1
    idx = np.clip(idx, 0, n - 1)
    h = nodes[idx + 1] - nodes[idx]
    theta = (x - nodes[idx]) / h
    return idx, h, theta


def eval_branch(br: Branch, x):
    """Dense-output state ``(y(x), y'(x))``; ``x`` may be a scalar or an array."""
    xa = np.asarray(x, dtype=float)
    slack = 4 * _EPS * max(abs(br.lo), abs(br.hi), 1.0)
    if np.any(xa < br.lo - slack) or np.any(xa > br.hi + slack):
        raise OutOfSpan(f"x outside the branch span [{br.lo}, {br.hi}]")
    flat = np.clip(xa.ravel(), br.lo, br.hi)
    idx, h, theta = _locate(br, flat)
    powers = theta[:, None] ** np.arange(1, 5)[None, :]
    weights = powers @ _P.T                                     # (m, 7)
    incr = (weights[:, None, :] @ br.stages[idx])[:, 0, :]
    state = br.states[idx] + h[:, None] * incr
    at_end = flat == br.nodes[idx + 1]
    if np.any(at_end):
        state[at_end] = br.states[idx[at_end] + 1]
    y = state[:, 0].reshape(xa.shape)
    dy = state[:, 1].reshape(xa.shape)
    if xa.ndim == 0:
        return y[()], dy[()]
    return y, dy


def _check_range(br, lo, hi):
    if lo > hi:
        lo, hi = hi, lo
    slack = 4 * _EPS * max(abs(br.lo), abs(br.hi), 1.0)
    if lo < br.lo - slack or hi > br.hi + slack:
        raise OutOfSpan(f"[{lo}, {hi}] not within branch span [{br.lo}, {br.hi}]")
    return max(lo, br.lo), min(hi, br.hi)


def integral_against(br: Branch, f, lo: float, hi: float, tol: float = 1e-10):
    """``integral_lo^hi y(x) f(x) dx`` with ``y`` the branch value.

    ``f`` is a vectorised evaluator on the branch's side.  Panels follow
    the integrator's steps; the absolute error target is
    ``tol * (1 + |result|)``.
    """
    sign = 1.0
    if lo > hi:
        lo, hi, sign = hi, lo, -1.0
    lo, hi = _check_range(br, lo, hi)
    if lo == hi:
        return 0.0

    def g(x):
        return eval_branch(br, x)[0] * f(x)

    return sign * quadrature.integrate(g, br.edges(lo, hi), tol)


def antiderivative(br: Branch, f, tol: float = 1e-10):
    """Callable ``x -> integral_{br.lo}^x y f`` plus ``.total`` over the span."""

    def g(x):
        return eval_branch(br, x)[0] * f(x)

    return quadrature.Antiderivative(g, br.edges(), tol)
