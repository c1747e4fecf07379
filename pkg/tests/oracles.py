"""Closed-form eigenvalue oracles for zero-potential problems.

Independent of the package: only numpy and hand-derived formulas.  With
q = 0 a solution on one side is ``y(x) = y0 C(x - x0) + dy0 S(x - x0)``
where ``C, S`` are cos/sin (lam > 0), cosh/sinh (lam < 0) or 1/x (lam = 0).
"""
import math

import numpy as np


def fundamental(lam, h):
    """``(C, S, C', S')`` at offset ``h`` for ``y'' = -lam y``."""
    if lam > 0:
        s = math.sqrt(lam)
        return math.cos(s * h), math.sin(s * h) / s, -s * math.sin(s * h), math.cos(s * h)
    if lam < 0:
        s = math.sqrt(-lam)
        return math.cosh(s * h), math.sinh(s * h) / s, s * math.sinh(s * h), math.cosh(s * h)
    return 1.0, h, 0.0, 1.0


def propagate(lam, y0, dy0, h):
    c, s, dc, ds = fundamental(lam, h)
    return y0 * c + dy0 * s, y0 * dc + dy0 * ds


def tau2_of_phi(lam, a, c, b, alpha10, alpha11, alpha20, alpha21, alpha20p, alpha21p, row1, row2):
    """``tau2`` of the left-normalised solution; zero exactly at eigenvalues."""
    y, dy = propagate(lam, alpha11, -alpha10, c - a)
    t = np.array([row1, row2], dtype=float)
    # T[:, :2] (y-, dy-) + T[:, 2:] (y+, dy+) = 0
    yp, dyp = np.linalg.solve(t[:, 2:], -t[:, :2] @ np.array([y, dy]))
    yb, dyb = propagate(lam, yp, dyp, b - c)
    return alpha20 * yb - alpha21 * dyb + lam * (alpha20p * yb - alpha21p * dyb)


def bisect(g, lo, hi, tol=1e-15):
    glo = g(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        gm = g(mid)
        if gm == 0.0:
            return mid
        if (gm < 0) == (glo < 0):
            lo, glo = mid, gm
        else:
            hi = mid
        if hi - lo <= tol * max(1.0, abs(mid)):
            break
    return 0.5 * (lo + hi)


def roots_on_grid(g, grid):
    vals = [g(x) for x in grid]
    out = []
    for x0, x1, g0, g1 in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
        if g0 == 0.0:
            out.append(x0)
        elif g0 * g1 < 0:
            out.append(bisect(g, x0, x1))
    return out


# -- the Dirichlet / y(2) + lam y'(2) fixture on [0, 2] with identity coupling --

def p0_positive(count):
    """First ``count`` positive eigenvalues: ``s^2`` with ``tan(2s) + s^3 = 0``.

    Written as ``sin(2s) + s^3 cos(2s) = 0`` so the function has no poles.
    """
    def g(s):
        return math.sin(2 * s) + s ** 3 * math.cos(2 * s)

    roots = []
    hi = 4.0
    while len(roots) < count:
        roots = roots_on_grid(g, np.linspace(1e-3, hi, int(hi * 400)))
        hi *= 2
    return [s * s for s in roots[:count]]


def p0_negative():
    """Negative eigenvalues ``-s^2``: ``s^3 cosh(2s) - sinh(2s) = 0``, s > 0."""
    def g(s):
        return s ** 3 * math.cosh(2 * s) - math.sinh(2 * s)

    return [-s * s for s in roots_on_grid(g, np.linspace(1e-2, 10.0, 4000))]


def zero_potential_eigenvalues(coeffs, lmin, lmax, step=2e-3):
    """Eigenvalues in ``[lmin, lmax]`` of a q = 0 problem given by ``coeffs``.

    ``coeffs`` holds keyword arguments of :func:`tau2_of_phi`.  The search
    grid is uniform in ``sign(lam) sqrt(|lam|)``.
    """
    def g(lam):
        return tau2_of_phi(lam, **coeffs)

    def to_s(lam):
        return math.copysign(math.sqrt(abs(lam)), lam)

    s = np.arange(to_s(lmin), to_s(lmax) + step, step)
    lam = np.sign(s) * s * s
    lam = lam[(lam >= lmin) & (lam <= lmax)]
    return roots_on_grid(g, list(lam))
