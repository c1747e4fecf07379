"""Eigenvalues as real zeros of the characteristic function, and eigenfunctions.

The scan grid is uniform in ``s = sign(lam) sqrt(|lam|)`` with step
``pi / (4 (b - a))``, i.e. about four samples per quasi-period of
``omega`` in ``s``.  Sign changes are refined by a Brent-type bracketing
iteration.  Local minima of ``|omega|`` without a sign change are examined
by golden-section search: they either hide a pair of close simple zeros
(a sign flip turns up and yields two brackets) or a zero of even
multiplicity (reported as a suspicious point).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from .elements import H1Element
from .errors import (BadRange, NoConvergence, NotABracket, NotAnEigenvalue)
from .hilbert import h1_norm
from .ivp import DEFAULT_TOL, Tolerances
from .problem import Problem, t_b_prime
from .shooting import char_fn, omega_value

DEFAULT_TOL_LAMBDA = 1e-10
SUSPICIOUS_LEVEL = 1e-6
ACCEPT_LEVEL = 1e-9
EIGEN_CHECK_LEVEL = 1e-6
_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    w_lo: float
    w_hi: float


@dataclass(frozen=True)
class SuspiciousPoint:
    lam: float
    omega: float
    scale: float


@dataclass
class ScanResult:
    brackets: List[Bracket] = field(default_factory=list)
    suspicious: List[SuspiciousPoint] = field(default_factory=list)
    grid: Optional[np.ndarray] = None
    omega: Optional[np.ndarray] = None

    def __iter__(self):
        # allows ``brackets, suspicious = scan_brackets(...)``
        return iter((self.brackets, self.suspicious))


@dataclass(frozen=True)
class Eigenvalue:
    index: int
    lam: float
    omega_residual: float
    multiple: bool = False


@dataclass(frozen=True, eq=False)
class Eigenpair:
    index: int
    lam: float
    eigenfunction: H1Element
    omega_residual: float


def _s_of(lam):
    return math.copysign(math.sqrt(abs(lam)), lam)


def _lam_of(s):
    return math.copysign(s * s, s)


def scan_grid(p: Problem, lmin: float, lmax: float):
    step = math.pi / (4.0 * (p.b - p.a))
    s_lo, s_hi = _s_of(lmin), _s_of(lmax)
    n = max(2, int(math.ceil((s_hi - s_lo) / step)) + 1)
    lam = np.array([_lam_of(s) for s in np.linspace(s_lo, s_hi, n)])
    lam[0], lam[-1] = lmin, lmax
    return lam


def _omega(p, lam, tol):
    w, scale = omega_value(p, float(lam), tol)
    return float(w), float(scale)


def _golden_dip(p, lo, hi, sign, tol, max_iter=80):
    """Minimise ``|omega|`` on [lo, hi]; stop early at a sign flip.

    Returns ``("flip", x, w)`` or ``("min", x, w, scale)``.
    """
    a, b = lo, hi
    x = a + _GOLDEN * (b - a)
    fx, sx = _omega(p, x, tol)
    if fx * sign < 0:
        return ("flip", x, fx)
    u_prev = None
    for _ in range(max_iter):
        if b - a <= 1e-12 * max(1.0, abs(x)):
            break
        # probe the larger of the two sub-intervals
        if x - a > b - x:
            u = x - _GOLDEN * (x - a)
        else:
            u = x + _GOLDEN * (b - x)
        if u == u_prev:
            break
        u_prev = u
        fu, su = _omega(p, u, tol)
        if fu * sign < 0:
            return ("flip", u, fu)
        if abs(fu) < abs(fx):
            if u < x:
                b = x
            else:
                a = x
            x, fx, sx = u, fu, su
        else:
            if u < x:
                a = u
            else:
                b = u
    return ("min", x, fx, sx)


def scan_brackets(p: Problem, lmin: float, lmax: float,
                  tol: Tolerances = DEFAULT_TOL) -> ScanResult:
    """Sign-change brackets of omega on [lmin, lmax] and suspicious dips."""
    if not lmin < lmax:
        raise BadRange(f"need lmin < lmax, got [{lmin}, {lmax}]")
    lam = scan_grid(p, lmin, lmax)
    vals = [_omega(p, x, tol) for x in lam]
    w = np.array([v[0] for v in vals])
    result = ScanResult(grid=lam, omega=w)

    for i in range(lam.size - 1):
        if w[i] == 0.0:
            j = i if i + 1 < lam.size else i - 1
            result.brackets.append(Bracket(lam[j], lam[j + 1], w[j], w[j + 1]))
        elif w[i] * w[i + 1] < 0:
            result.brackets.append(Bracket(lam[i], lam[i + 1], w[i], w[i + 1]))
    if w[-1] == 0.0:
        result.brackets.append(Bracket(lam[-2], lam[-1], w[-2], w[-1]))

    for i in range(1, lam.size - 1):
        wl, wi, wr = w[i - 1], w[i], w[i + 1]
        if wi == 0.0 or wi * wl <= 0 or wi * wr <= 0:
            continue
        if not (abs(wi) <= abs(wl) and abs(wi) <= abs(wr)):
            continue
        found = _golden_dip(p, lam[i - 1], lam[i + 1], math.copysign(1.0, wi), tol)
        if found[0] == "flip":
            _, xf, wf = found
            result.brackets.append(Bracket(lam[i - 1], xf, wl, wf))
            result.brackets.append(Bracket(xf, lam[i + 1], wf, wr))
        else:
            _, xm, wm, sm = found
            if abs(wm) < SUSPICIOUS_LEVEL * sm:
                result.suspicious.append(SuspiciousPoint(xm, wm, sm))
    result.brackets.sort(key=lambda br: br.lo)
    return result


def refine_eigenvalue(p: Problem, br: Bracket, tol_lambda: float = DEFAULT_TOL_LAMBDA,
                      tol: Tolerances = DEFAULT_TOL, max_iter: int = 200) -> float:
    """Zero of omega inside a sign-change bracket.

    Brent's combination of bisection, secant and inverse quadratic
    interpolation; the iterate and the opposite-sign point always bracket
    the root, and iteration stops once that bracket is narrower than
    ``tol_lambda * max(1, |lam|)``.
    """
    a, b = float(br.lo), float(br.hi)
    fa, fb = float(br.w_lo), float(br.w_hi)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0:
        raise NotABracket(f"omega has equal signs at {a} and {b}")
    eps = np.finfo(float).eps
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if fb * fc > 0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        t = 0.5 * tol_lambda * max(1.0, abs(b))
        m = 0.5 * (c - b)
        if abs(m) <= t + 2 * eps * abs(b) or fb == 0.0:
            return b
        if abs(e) < t or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                pn, qn = 2.0 * m * s, 1.0 - s
            else:
                qa, r = fa / fc, fb / fc
                pn = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0))
                qn = (qa - 1.0) * (r - 1.0) * (s - 1.0)
            if pn > 0:
                qn = -qn
            else:
                pn = -pn
            if 2.0 * pn < min(3.0 * m * qn - abs(t * qn), abs(e * qn)):
                e, d = d, pn / qn
            else:
                d = e = m
        a, fa = b, fb
        b += d if abs(d) > t else math.copysign(t, m)
        fb = _omega(p, b, tol)[0]
    raise NoConvergence(f"no convergence within {max_iter} iterations in [{br.lo}, {br.hi}]")


def find_eigenvalues(p: Problem, lmin: float, lmax: float,
                     tol: Tolerances = DEFAULT_TOL,
                     tol_lambda: float = DEFAULT_TOL_LAMBDA) -> List[Eigenvalue]:
    """Sorted eigenvalues in [lmin, lmax] with their relative omega residuals."""
    scan = scan_brackets(p, lmin, lmax, tol)
    found = []
    for br in scan.brackets:
        lam = refine_eigenvalue(p, br, tol_lambda, tol)
        w, scale = _omega(p, lam, tol)
        found.append((lam, abs(w) / scale, False))
    for sp in scan.suspicious:
        if abs(sp.omega) < ACCEPT_LEVEL * sp.scale:
            found.append((sp.lam, abs(sp.omega) / sp.scale, True))
    found.sort()
    merged = []
    for lam, res, multiple in found:
        if merged and abs(lam - merged[-1][0]) <= 10 * tol_lambda * max(1.0, abs(lam)):
            if res < merged[-1][1]:
                merged[-1] = (lam, res, merged[-1][2] or multiple)
            continue
        merged.append((lam, res, multiple))
    return [Eigenvalue(i, lam, res, mult) for i, (lam, res, mult) in enumerate(merged)]


def eigenvalues_in(p: Problem, lmin: float, lmax: float, tol: Tolerances = DEFAULT_TOL,
                   tol_lambda: float = DEFAULT_TOL_LAMBDA) -> List[float]:
    return [ev.lam for ev in find_eigenvalues(p, lmin, lmax, tol, tol_lambda)]


def basis_element(p: Problem, basis, which="phi") -> H1Element:
    """The basis solution ``phi`` (or ``psi``) as an element with ``f1 = T'_b``."""
    left = basis.phi_left if which == "phi" else basis.psi_left
    right = basis.phi_right if which == "phi" else basis.psi_right
    yb, dyb = (right.end_state if which == "phi" else right.start_state)
    return H1Element(left.value, right.value, t_b_prime(p, yb, dyb),
                     left.derivative, right.derivative,
                     mesh_left=left.nodes, mesh_right=right.nodes)


def _first_sign(p: Problem, F: H1Element, n=2001):
    for side_fn, lo, hi in ((F.left, p.a, p.c), (F.right, p.c, p.b)):
        vals = np.real(side_fn(np.linspace(lo, hi, n)))
        big = np.flatnonzero(np.abs(vals) > 1e-6)
        if big.size:
            return math.copysign(1.0, vals[big[0]])
    return 1.0


def eigenfunction(p: Problem, lambda_n: float, tol: Tolerances = DEFAULT_TOL,
                  index: int = -1) -> Eigenpair:
    """H1-normalised eigenfunction ``phi(., lambda_n)``, first large value positive."""
    basis = char_fn(p, float(lambda_n), tol)
    if abs(basis.omega) > EIGEN_CHECK_LEVEL * basis.omega_scale:
        raise NotAnEigenvalue(
            f"|omega({lambda_n})| = {abs(basis.omega):.3g} exceeds "
            f"{EIGEN_CHECK_LEVEL:g} * {basis.omega_scale:.3g}")
    u = basis_element(p, basis, "phi")
    norm = h1_norm(p, u)
    u = u * (_first_sign(p, u) / norm)
    return Eigenpair(index=index, lam=float(lambda_n), eigenfunction=u,
                     omega_residual=abs(basis.omega) / basis.omega_scale)


def eigenpairs_in(p: Problem, lmin: float, lmax: float, tol: Tolerances = DEFAULT_TOL,
                  tol_lambda: float = DEFAULT_TOL_LAMBDA) -> List[Eigenpair]:
    return [eigenfunction(p, ev.lam, tol, ev.index)
            for ev in find_eigenvalues(p, lmin, lmax, tol, tol_lambda)]


def winding_number(p: Problem, re_lo: float, re_hi: float, im_lo: float, im_hi: float,
                   tol: Tolerances = DEFAULT_TOL, max_angle: float = math.pi / 4,
                   max_depth: int = 40, min_segments: int = 16) -> float:
    """Net winding of omega around 0 along the rectangle, counter-clockwise.

    Each edge starts as ``min_segments`` pieces which are bisected until
    the argument change across a piece is below ``max_angle`` and agrees
    with the sum over its two halves.  An integer result counts the zeros inside.
    """
    corners = [complex(re_lo, im_lo), complex(re_hi, im_lo),
               complex(re_hi, im_hi), complex(re_lo, im_hi)]
    cache = {}

    def w(z):
        if z not in cache:
            cache[z] = complex(omega_value(p, z, tol)[0])
        return cache[z]

    def arg_step(z0, z1):
        w0, w1 = w(z0), w(z1)
        if w0 == 0 or w1 == 0:
            raise ArithmeticError(f"omega vanishes on the contour near {z0}")
        r = w1 / w0
        return math.atan2(r.imag, r.real)

    total = 0.0
    for k in range(4):
        za, zb = corners[k], corners[(k + 1) % 4]
        ts = np.linspace(0.0, 1.0, min_segments + 1)
        stack = [(za + (zb - za) * t0, za + (zb - za) * t1, 0)
                 for t0, t1 in zip(ts[-2::-1], ts[:0:-1])]
        while stack:
            z0, z1, depth = stack.pop()
            zm = 0.5 * (z0 + z1)
            whole = arg_step(z0, z1)
            halves = arg_step(z0, zm) + arg_step(zm, z1)
            # a segment is resolved once its midpoint confirms the small angle
            resolved = abs(whole) <= max_angle and abs(halves - whole) < 1e-6
            if resolved or depth >= max_depth:
                total += halves
            else:
                stack.append((zm, z1, depth + 1))
                stack.append((z0, zm, depth + 1))
    return total / (2 * math.pi)
