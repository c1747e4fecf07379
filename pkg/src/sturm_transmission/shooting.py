"""Basis solutions phi, psi and the characteristic function.

``phi`` starts at ``a`` with ``(y, y') = (alpha11, -alpha10)``, so it meets
the left condition; ``psi`` starts at ``b`` with
``(y, y') = (alpha21 + lam alpha21p, alpha20 + lam alpha20p)`` and meets
the right condition.  Both are carried across ``c`` by solving the two
transmission conditions for the missing one-sided state.

The jump multiplies the Wronskian by ``Delta12 / Delta34``, so
``omega := Delta12 * w_minus == Delta34 * w_plus`` is well defined.  Its
zeros are the eigenvalues.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ivp import DEFAULT_TOL, Branch, Tolerances, eval_branch, integrate_ivp
from .problem import LEFT, RIGHT, Problem


class EndState(NamedTuple):
    y: complex
    dy: complex


def transmission_forward(p: Problem, left: EndState) -> EndState:
    """``(y(c+), y'(c+))`` from ``(y(c-), y'(c-))`` (Cramer's rule on the conditions)."""
    m = p.minors
    y, dy = left
    return EndState(-(m.d14 * y + m.d24 * dy) / m.d34,
                    (m.d13 * y + m.d23 * dy) / m.d34)


def transmission_backward(p: Problem, right: EndState) -> EndState:
    """``(y(c-), y'(c-))`` from ``(y(c+), y'(c+))``."""
    m = p.minors
    y, dy = right
    return EndState((m.d23 * y + m.d24 * dy) / m.d12,
                    -(m.d13 * y + m.d14 * dy) / m.d12)


def phi_initial(p: Problem):
    return EndState(p.left.alpha11, -p.left.alpha10)


def psi_terminal(p: Problem, lam):
    r = p.right
    return EndState(r.alpha21 + lam * r.alpha21p, r.alpha20 + lam * r.alpha20p)


def build_phi(p: Problem, lam, tol: Tolerances = DEFAULT_TOL):
    y0, dy0 = phi_initial(p)
    left = integrate_ivp(p, LEFT, lam, p.a, y0, dy0, p.c, tol)
    yc, dyc = transmission_forward(p, EndState(*left.end_state))
    right = integrate_ivp(p, RIGHT, lam, p.c, yc, dyc, p.b, tol)
    return left, right


def build_psi(p: Problem, lam, tol: Tolerances = DEFAULT_TOL):
    y0, dy0 = psi_terminal(p, lam)
    right = integrate_ivp(p, RIGHT, lam, p.b, y0, dy0, p.c, tol)
    yc, dyc = transmission_backward(p, EndState(*right.end_state))
    left = integrate_ivp(p, LEFT, lam, p.c, yc, dyc, p.a, tol)
    return left, right


def wronskian_at(phi: Branch, psi: Branch, x):
    """``phi psi' - phi' psi`` at ``x`` (scalar or array)."""
    f, df = eval_branch(phi, x)
    g, dg = eval_branch(psi, x)
    return f * dg - df * g


def wronskian_spread(phi: Branch, psi: Branch, n=20):
    """Relative spread of the Wronskian over ``n`` equispaced points of the common span."""
    lo = max(phi.lo, psi.lo)
    hi = min(phi.hi, psi.hi)
    w = wronskian_at(phi, psi, np.linspace(lo, hi, n))
    ref = np.max(np.abs(w))
    if ref == 0.0:
        return 0.0
    return float(np.max(np.abs(w - w[0])) / ref)


def _omega_scale(p, phi_state, psi_state):
    # natural size of a Wronskian of the two states
    return p.minors.d12 * max(abs(phi_state[0]), abs(phi_state[1])) * \
        max(abs(psi_state[0]), abs(psi_state[1]))


@dataclass(frozen=True, eq=False)
class BasisAtLambda:
    lam: complex
    phi_left: Branch
    phi_right: Branch
    psi_left: Branch
    psi_right: Branch
    w_minus: complex
    w_plus: complex
    omega: complex
    omega_scale: float
    consistency_defect: float

    def phi(self, x):
        """(phi, phi') at points of one side; the side is taken from ``x`` vs c."""
        return _side_eval(self.phi_left, self.phi_right, x)

    def psi(self, x):
        return _side_eval(self.psi_left, self.psi_right, x)


def _side_eval(left: Branch, right: Branch, x):
    xa = np.asarray(x, dtype=float)
    c = left.hi
    if xa.ndim == 0:
        return eval_branch(left if xa < c else right, xa)
    yl, dyl = eval_branch(left, np.minimum(xa, c))
    yr, dyr = eval_branch(right, np.maximum(xa, c))
    mask = xa < c
    return np.where(mask, yl, yr), np.where(mask, dyl, dyr)


def char_fn(p: Problem, lam, tol: Tolerances = DEFAULT_TOL) -> BasisAtLambda:
    """Build both basis solutions and the characteristic function at ``lam``."""
    phi_l, phi_r = build_phi(p, lam, tol)
    psi_l, psi_r = build_psi(p, lam, tol)
    w_minus = wronskian_at(phi_l, psi_l, 0.5 * (p.a + p.c))
    w_plus = wronskian_at(phi_r, psi_r, 0.5 * (p.c + p.b))
    m = p.minors
    omega = m.d12 * w_minus
    scale = _omega_scale(p, phi_l.end_state, psi_l.start_state)
    lhs, rhs = m.d34 * w_plus, m.d12 * w_minus
    denom = max(abs(lhs), abs(rhs), 1e-6 * scale, np.finfo(float).tiny)
    defect = abs(lhs - rhs) / denom
    return BasisAtLambda(lam=phi_l.lam, phi_left=phi_l, phi_right=phi_r,
                         psi_left=psi_l, psi_right=psi_r, w_minus=w_minus,
                         w_plus=w_plus, omega=omega, omega_scale=scale,
                         consistency_defect=float(defect))


def omega_value(p: Problem, lam, tol: Tolerances = DEFAULT_TOL):
    """Characteristic function by matching at ``c-`` only.

    Two half integrations instead of four; used for scans and root
    refinement.  Returns ``(omega, scale)``.
    """
    y0, dy0 = phi_initial(p)
    phi_l = integrate_ivp(p, LEFT, lam, p.a, y0, dy0, p.c, tol)
    y0, dy0 = psi_terminal(p, lam)
    psi_r = integrate_ivp(p, RIGHT, lam, p.b, y0, dy0, p.c, tol)
    f, df = phi_l.end_state
    g, dg = transmission_backward(p, EndState(*psi_r.end_state))
    omega = p.minors.d12 * (f * dg - df * g)
    return omega, _omega_scale(p, (f, df), (g, dg))
