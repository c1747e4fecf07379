"""Weighted inner product, the operator A, and the symmetry certificates.

``<F, G> = Delta12 int_a^c f conj(g) + Delta34 int_c^b f conj(g)
+ (Delta34 / Delta0) f1 conj(g1)``.

``A (f, T'_b f) = (-f'' + q f, -T_b f)`` on the domain of pieces meeting
the left and both transmission conditions with ``f1 = T'_b f``.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import Polynomial

from . import quadrature
from .elements import DomainElement, H1Element, PolyElement
from .errors import Delta0Zero, DegenerateConstraints, NotInDomain
from .problem import (LEFT, RIGHT, Problem, state_scale, t_b, t_b_prime, tau1,
                      tau_transmission)

DOMAIN_TOL = 1e-8


def _require_delta0(p: Problem):
    if not p.delta0 > 0.0:
        raise Delta0Zero(f"Delta0 = {p.delta0}; the weighted inner product needs Delta0 > 0")


def side_integral(p: Problem, side, f, g, mesh=None, tol=1e-10):
    """``int f conj(g)`` over one side.

    Polynomial pieces use a Gauss-Legendre rule exact for the product
    degree; anything else goes through adaptive quadrature.
    """
    lo, hi = p.interval.side_bounds(side)
    if isinstance(f, Polynomial) and isinstance(g, Polynomial):
        deg = f.degree() + g.degree()
        t, w = quadrature.gauss_rule(math.ceil((deg + 1) / 2) + 2)
        x = 0.5 * (lo + hi) + 0.5 * (hi - lo) * t
        return 0.5 * (hi - lo) * np.sum(w * f(x) * np.conj(g(x)))
    if mesh is None:
        edges = np.linspace(lo, hi, 9)
    else:
        mesh = np.asarray(mesh, dtype=float)
        edges = np.union1d([lo, hi], mesh[(mesh > lo) & (mesh < hi)])
    return quadrature.integrate(lambda x: f(x) * np.conj(g(x)), edges, tol)


def _mesh(F, G, side):
    mf, mg = F.mesh(side), G.mesh(side)
    if mf is None:
        return mg
    if mg is None:
        return mf
    return np.union1d(mf, mg)


def inner_product(p: Problem, F: H1Element, G: H1Element):
    _require_delta0(p)
    m = p.minors
    left = side_integral(p, LEFT, F.left, G.left, _mesh(F, G, LEFT))
    right = side_integral(p, RIGHT, F.right, G.right, _mesh(F, G, RIGHT))
    value = m.d12 * left + m.d34 * right + (m.d34 / p.delta0) * F.f1 * np.conj(G.f1)
    if np.isrealobj(value) or np.imag(value) == 0:
        return float(np.real(value))
    return complex(value)


def h1_norm(p: Problem, F: H1Element) -> float:
    return math.sqrt(max(float(np.real(inner_product(p, F, F))), 0.0))


def std_norm(p: Problem, F: H1Element) -> float:
    """Unit-weight norm of ``L2 + L2 + C``."""
    left = side_integral(p, LEFT, F.left, F.left, F.mesh(LEFT))
    right = side_integral(p, RIGHT, F.right, F.right, F.mesh(RIGHT))
    return math.sqrt(float(np.real(left + right)) + abs(F.f1) ** 2)


# -- functionals on elements ---------------------------------------------------

def _endpoint_states(p: Problem, F: H1Element):
    """(value, derivative) at a, c-, c+, b."""
    if not F.has_derivatives:
        raise ValueError("element has no derivative pieces")
    return {
        "a": (F.left(p.a), F.dleft(p.a)),
        "c-": (F.left(p.c), F.dleft(p.c)),
        "c+": (F.right(p.c), F.dright(p.c)),
        "b": (F.right(p.b), F.dright(p.b)),
    }


def T_b(p: Problem, F: H1Element):
    return t_b(p, F.right(p.b), F.dright(p.b))


def T_b_prime(p: Problem, F: H1Element):
    return t_b_prime(p, F.right(p.b), F.dright(p.b))


def domain_residuals(p: Problem, F: H1Element):
    """Constraint residuals of the domain of A, plus their common scale."""
    st = _endpoint_states(p, F)
    t3, t4 = tau_transmission(p, *st["c-"], *st["c+"])
    scale = state_scale(*(v for pair in st.values() for v in pair), F.f1)
    return {
        "tau1": abs(tau1(p, *st["a"])),
        "tau3": abs(t3),
        "tau4": abs(t4),
        "f1": abs(F.f1 - t_b_prime(p, *st["b"])),
        "scale": scale,
    }


def in_domain(p: Problem, F: H1Element, tol=DOMAIN_TOL) -> bool:
    r = domain_residuals(p, F)
    return max(r["tau1"], r["tau3"], r["tau4"], r["f1"]) <= tol * r["scale"]


def apply_A(p: Problem, F: H1Element, tol=DOMAIN_TOL) -> H1Element:
    """``(-f'' + q f, -T_b f)`` for ``F`` in the domain (else NotInDomain)."""
    r = domain_residuals(p, F)
    worst = max(r["tau1"], r["tau3"], r["tau4"], r["f1"])
    if worst > tol * r["scale"]:
        raise NotInDomain(f"constraint residual {worst:.3g} exceeds {tol:g} * {r['scale']:.3g}")
    second = -T_b(p, F)
    if isinstance(F, PolyElement) and p.potential.is_polynomial:
        ql = Polynomial(p.potential.left_coeffs)
        qr = Polynomial(p.potential.right_coeffs)
        return PolyElement(-F.left.deriv(2) + ql * F.left,
                           -F.right.deriv(2) + qr * F.right, second)
    if not isinstance(F, PolyElement):
        raise NotInDomain("A is only applied to polynomial elements")
    d2l, d2r = F.left.deriv(2), F.right.deriv(2)
    q_l, q_r = p.q(LEFT), p.q(RIGHT)
    return H1Element(lambda x: -d2l(x) + q_l(x) * F.left(x),
                     lambda x: -d2r(x) + q_r(x) * F.right(x), second)


def symmetry_defect(p: Problem, F: H1Element, G: H1Element) -> float:
    """``|<AF, G> - <F, AG>|``."""
    AF = apply_A(p, F)
    AG = apply_A(p, G)
    return abs(inner_product(p, AF, G) - inner_product(p, F, AG))


def orthogonality_defect(p: Problem, u, v) -> float:
    """Weighted-orthogonality residual of two real eigenfunctions.

    ``u`` and ``v`` are eigenpairs (or bare elements); the boundary slot
    is the ``T'_b`` value carried by each eigenfunction.
    """
    _require_delta0(p)
    fu = getattr(u, "eigenfunction", u)
    fv = getattr(v, "eigenfunction", v)
    m = p.minors
    left = np.real(side_integral(p, LEFT, fu.left, fv.left, _mesh(fu, fv, LEFT)))
    right = np.real(side_integral(p, RIGHT, fu.right, fv.right, _mesh(fu, fv, RIGHT)))
    bnd = (m.d34 / p.delta0) * np.real(fu.f1) * np.real(fv.f1)
    return float(abs(m.d12 * left + m.d34 * right + bnd))


def lagrange_boundary_terms(p: Problem, F: H1Element, G: H1Element):
    """The boundary terms produced by integrating ``<AF, G>`` by parts.

    Returns the interface combination ``Delta12 W(c-) - Delta34 W(c+)``,
    the right-end identity ``T'_b f T_b g - T_b f T'_b g + Delta0 W(b)``,
    ``W(a)`` and a scale, where ``W = f conj(g)' - f' conj(g)``.
    """
    sf = _endpoint_states(p, F)
    sg = _endpoint_states(p, G)

    def W(key):
        (f, df), (g, dg) = sf[key], sg[key]
        return f * np.conj(dg) - df * np.conj(g)

    fb, dfb = sf["b"]
    gb, dgb = (np.conj(v) for v in sg["b"])
    m = p.minors
    right_end = (t_b_prime(p, fb, dfb) * t_b(p, gb, dgb)
                 - t_b(p, fb, dfb) * t_b_prime(p, gb, dgb) + p.delta0 * W("b"))
    scale = state_scale(*(v for pair in sf.values() for v in pair)) * \
        state_scale(*(v for pair in sg.values() for v in pair))
    return {
        "interface": abs(m.d12 * W("c-") - m.d34 * W("c+")),
        "right_end": abs(right_end),
        "left_end": abs(W("a")),
        "scale": scale,
    }


# -- building domain elements ----------------------------------------------------

def _value_row(x, n):
    return np.array([x ** k for k in range(n)], dtype=float)


def _deriv_row(x, n):
    return np.array([k * x ** (k - 1) if k else 0.0 for k in range(n)], dtype=float)


def constraint_matrix(p: Problem, n_left: int, n_right: int):
    """Rows: left condition and both transmission conditions, acting on
    the concatenated ascending coefficient vector ``[left | right]``."""
    r1, r2 = p.transmission.row1, p.transmission.row2
    vl_a, dl_a = _value_row(p.a, n_left), _deriv_row(p.a, n_left)
    vl_c, dl_c = _value_row(p.c, n_left), _deriv_row(p.c, n_left)
    vr_c, dr_c = _value_row(p.c, n_right), _deriv_row(p.c, n_right)
    C = np.zeros((3, n_left + n_right))
    C[0, :n_left] = p.left.alpha10 * vl_a + p.left.alpha11 * dl_a
    for i, row in ((1, r1), (2, r2)):
        C[i, :n_left] = row[0] * vl_c + row[1] * dl_c
        C[i, n_left:] = row[2] * vr_c + row[3] * dr_c
    return C


def make_domain_element(p: Problem, raw_left, raw_right) -> DomainElement:
    """Smallest coefficient correction putting ``(raw_left, raw_right)`` in the domain.

    The correction is the least-squares projection of the coefficient
    vector onto the null space of the three constraint rows; ``f1`` is then
    set to ``T'_b`` of the result.
    """
    cl = np.atleast_1d(np.asarray(raw_left, dtype=float))
    cr = np.atleast_1d(np.asarray(raw_right, dtype=float))
    nl, nr = cl.size, cr.size
    C = constraint_matrix(p, nl, nr)
    if nl + nr < 4 or np.linalg.matrix_rank(C) < 3:
        raise DegenerateConstraints(
            f"constraints have rank {np.linalg.matrix_rank(C)} on {nl}+{nr} coefficients")
    coef = np.concatenate([cl, cr])
    for _ in range(2):                          # second pass mops up rounding
        corr, *_ = np.linalg.lstsq(C, C @ coef, rcond=None)
        coef = coef - corr
    left = Polynomial(coef[:nl])
    right = Polynomial(coef[nl:])
    f1 = t_b_prime(p, right(p.b), right.deriv()(p.b))
    return DomainElement(left, right, f1)
