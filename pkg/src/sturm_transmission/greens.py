"""Green's function, the nonhomogeneous solve, and the resolvent.

With ``omega = Delta12 w_minus = Delta34 w_plus`` the kernel is
``G0(x, y) = phi(min(x, y)) psi(max(x, y)) / omega`` and

    Y0(x) = Delta12 int_a^c G0(x, y) f(y) dy + Delta34 int_c^b G0(x, y) f(y) dy,

i.e. the function part of ``<G_x, conj(F)>`` in the weighted space.  The
direct solver below evaluates the same thing side by side through running
integrals of ``phi f`` and ``psi f``; the cross-side constants are
``C_left = I_plus / w_plus`` and ``C_right = I_minus / w_minus`` with
``I_minus = int_a^c phi f`` and ``I_plus = int_c^b psi f``.

The resolvent adds ``(f1 / w_plus) phi``; since ``tau2(phi) = w_plus`` the
result satisfies ``tau2(Y) = f1``, which is exactly the second component
of ``(lam - A) Y = F``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quadrature
from .elements import H1Element
from .errors import AtEigenvalue, AtInteriorSingularity
from .ivp import Branch, antiderivative, eval_branch
from .problem import (LEFT, RIGHT, Problem, t_b_prime, tau1, tau2,
                      tau_transmission)
from .shooting import BasisAtLambda

AT_EIGENVALUE_LEVEL = 1e-9


def _require_regular(basis: BasisAtLambda):
    if abs(basis.omega) <= AT_EIGENVALUE_LEVEL * basis.omega_scale:
        raise AtEigenvalue(f"omega({basis.lam}) = {basis.omega:.3g} is numerically zero")


def _branch_at(left: Branch, right: Branch, c, x):
    return eval_branch(left if x < c else right, x)[0]


def green_eval(p: Problem, basis: BasisAtLambda, x: float, y: float):
    """``G0(x, y; lam)`` for ``x, y`` in ``[a, b]`` away from ``c``."""
    _require_regular(basis)
    if x == p.c or y == p.c:
        raise AtInteriorSingularity("the Green's function is not defined at x = c or y = c")
    lo, hi = (x, y) if x <= y else (y, x)
    f = _branch_at(basis.phi_left, basis.phi_right, p.c, lo)
    g = _branch_at(basis.psi_left, basis.psi_right, p.c, hi)
    return f * g / basis.omega


@dataclass(frozen=True)
class GreenVector:
    """``(G0(x, .), T'_b G0(x, .))``, the representer of the resolvent at ``x``.

    The boundary slot is ``T'_b`` applied in the second variable; since
    ``T'_b psi = Delta0`` it equals ``Delta0 phi(x) / omega``.
    """

    x: float
    lam: complex
    function: Callable
    boundary: complex


def green_vector(p: Problem, basis: BasisAtLambda, x: float) -> GreenVector:
    _require_regular(basis)
    if x == p.c:
        raise AtInteriorSingularity("base point at the interior point c")
    phi_x = _branch_at(basis.phi_left, basis.phi_right, p.c, x)
    psi_x = _branch_at(basis.psi_left, basis.psi_right, p.c, x)

    def kernel(y):
        y = np.asarray(y, dtype=float)
        phi_y = basis.phi(y)[0]
        psi_y = basis.psi(y)[0]
        return np.where(y <= x, phi_y * psi_x, phi_x * psi_y) / basis.omega

    return GreenVector(x=x, lam=basis.lam, function=kernel,
                       boundary=p.delta0 * phi_x / basis.omega)


def _pieces(f):
    if isinstance(f, H1Element):
        return f.left, f.right
    return f


def solve_nonhomogeneous(p: Problem, basis: BasisAtLambda, f) -> H1Element:
    """``Y0`` solving ``y'' + (lam - q) y = f`` with all four homogeneous conditions.

    ``f`` is an element or a ``(f_left, f_right)`` pair of vectorised
    callables.  The result carries derivative pieces; its ``f1`` slot is
    ``T'_b(Y0)``.
    """
    _require_regular(basis)
    f_left, f_right = _pieces(f)
    phl, phr, psl, psr = basis.phi_left, basis.phi_right, basis.psi_left, basis.psi_right
    wm, wp = basis.w_minus, basis.w_plus

    int_phi_l = antiderivative(phl, f_left)        # int_a^x phi f
    int_psi_l = antiderivative(psl, f_left)        # int_a^x psi f
    int_phi_r = antiderivative(phr, f_right)       # int_c^x phi f
    int_psi_r = antiderivative(psr, f_right)       # int_c^x psi f
    c_left = int_psi_r.total / wp
    c_right = int_phi_l.total / wm

    def left_state(x):
        a1 = int_phi_l(x)
        a2 = int_psi_l.total - int_psi_l(x)
        g, dg = eval_branch(psl, x)
        h, dh = eval_branch(phl, x)
        return ((g * a1 + h * a2) / wm + c_left * h,
                (dg * a1 + dh * a2) / wm + c_left * dh)

    def right_state(x):
        a1 = int_phi_r(x)
        a2 = int_psi_r.total - int_psi_r(x)
        g, dg = eval_branch(psr, x)
        h, dh = eval_branch(phr, x)
        return ((g * a1 + h * a2) / wp + c_right * g,
                (dg * a1 + dh * a2) / wp + c_right * dg)

    yb, dyb = right_state(p.b)
    return H1Element(lambda x: left_state(x)[0], lambda x: right_state(x)[0],
                     t_b_prime(p, yb, dyb),
                     lambda x: left_state(x)[1], lambda x: right_state(x)[1],
                     mesh_left=phl.nodes, mesh_right=phr.nodes)


def resolvent_apply(p: Problem, basis: BasisAtLambda, F: H1Element) -> H1Element:
    """``Y = (lam - A)^{-1} F``, returned as ``(Y, T'_b Y)``."""
    y0 = solve_nonhomogeneous(p, basis, F)
    k = F.f1 / basis.w_plus
    phl, phr = basis.phi_left, basis.phi_right

    def with_phi(piece, br, deriv):
        def fn(x):
            return piece(x) + k * eval_branch(br, x)[deriv]
        return fn

    yb = y0.right(p.b) + k * phr.end_state[0]
    dyb = y0.dright(p.b) + k * phr.end_state[1]
    return H1Element(with_phi(y0.left, phl, 0), with_phi(y0.right, phr, 0),
                     t_b_prime(p, yb, dyb),
                     with_phi(y0.dleft, phl, 1), with_phi(y0.dright, phr, 1),
                     mesh_left=phl.nodes, mesh_right=phr.nodes)


def resolvent_via_green(p: Problem, basis: BasisAtLambda, F: H1Element, x: float,
                        tol: float = 1e-10):
    """``<G_x, conj(F)>`` by direct quadrature of the kernel (independent route)."""
    gv = green_vector(p, basis, x)
    m = p.minors
    out = 0.0
    for side, weight, piece, br in ((LEFT, m.d12, F.left, basis.phi_left),
                                    (RIGHT, m.d34, F.right, basis.phi_right)):
        lo, hi = p.interval.side_bounds(side)
        edges = br.edges()
        if lo < x < hi:
            edges = np.union1d(edges, [x])
        out += weight * quadrature.integrate(lambda y: gv.function(y) * piece(y), edges, tol)
    if p.delta0 > 0:
        out += (m.d34 / p.delta0) * gv.boundary * F.f1
    return out


@dataclass(frozen=True)
class ResidualReport:
    ode: float
    tau1: float
    tau3: float
    tau4: float
    tau2_minus_f1: float
    second_component: float
    scale: float

    def boundary_max(self):
        return max(self.tau1, self.tau3, self.tau4, self.tau2_minus_f1,
                   self.second_component)

    def ok(self, ode_tol=1e-6, bc_tol=1e-8):
        return self.ode <= ode_tol * self.scale and self.boundary_max() <= bc_tol * self.scale


def _derivative(piece, dpiece, x, h, lo, hi):
    if dpiece is not None:
        return dpiece(x)
    # one-sided second-order difference when x sits on an endpoint
    if x - h < lo:
        return (-3 * piece(x) + 4 * piece(x + h) - piece(x + 2 * h)) / (2 * h)
    if x + h > hi:
        return (3 * piece(x) - 4 * piece(x - h) + piece(x - 2 * h)) / (2 * h)
    return (piece(x + h) - piece(x - h)) / (2 * h)


def residual_report(p: Problem, lam, Y: H1Element, F: H1Element, n: int = 101) -> ResidualReport:
    """Residuals of ``y'' + (lam - q) y = f`` and of the four side conditions.

    Second derivatives come from central differences with step
    ``1e-5 (b - a)``: of ``Y'`` when a derivative piece is present,
    otherwise second differences of ``Y``.
    """
    h = 1e-5 * (p.b - p.a)
    ode = 0.0
    mags = [1.0, abs(F.f1)]
    for side in (LEFT, RIGHT):
        lo, hi = p.interval.side_bounds(side)
        x = np.linspace(lo + 2 * h, hi - 2 * h, n)
        y = Y.piece(side)(x)
        dpiece = Y.dpiece(side)
        if dpiece is not None:
            d2 = (dpiece(x + h) - dpiece(x - h)) / (2 * h)
        else:
            d2 = (Y.piece(side)(x + h) - 2 * y + Y.piece(side)(x - h)) / h ** 2
        f = F.piece(side)(x)
        r = d2 + (lam - p.q(side)(x)) * y - f
        ode = max(ode, float(np.max(np.abs(r))))
        mags += [float(np.max(np.abs(y))), float(np.max(np.abs(f)))]
        if dpiece is not None:
            mags.append(float(np.max(np.abs(dpiece(x)))))

    def state(side, x):
        lo, hi = p.interval.side_bounds(side)
        return Y.piece(side)(x), _derivative(Y.piece(side), Y.dpiece(side), x, h, lo, hi)

    ya, dya = state(LEFT, p.a)
    ycm, dycm = state(LEFT, p.c)
    ycp, dycp = state(RIGHT, p.c)
    yb, dyb = state(RIGHT, p.b)
    t3, t4 = tau_transmission(p, ycm, dycm, ycp, dycp)
    return ResidualReport(
        ode=ode,
        tau1=float(abs(tau1(p, ya, dya))),
        tau3=float(abs(t3)),
        tau4=float(abs(t4)),
        tau2_minus_f1=float(abs(tau2(p, lam, yb, dyb) - F.f1)),
        second_component=float(abs(Y.f1 - t_b_prime(p, yb, dyb))),
        scale=max(mags),
    )
