"""Adaptive composite Gauss-Legendre quadrature on caller-supplied panels.

Panels are usually the accepted steps of an integrated branch, so the
integrand is a low-degree polynomial on each of them and the 16-point rule
is exact up to rounding; the 8-point rule provides the error estimate and
triggers bisection of panels where the integrand is not that smooth.
Partial integrals integrate the degree-15 Legendre interpolant through the
16 samples of an accepted panel, so no further integrand calls are needed.
"""
from __future__ import annotations

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import QuadratureFailure

_RULES = {}


def gauss_rule(n):
    if n not in _RULES:
        _RULES[n] = leggauss(n)
    return _RULES[n]


def _samples(g, lo, hi, n):
    t, _ = gauss_rule(n)
    x = 0.5 * (lo + hi)[:, None] + 0.5 * (hi - lo)[:, None] * t[None, :]
    return np.asarray(g(x.ravel())).reshape(x.shape)


def panel_sums(g, lo, hi, n=16):
    """Integrals of ``g`` over each panel ``[lo[i], hi[i]]`` with an n-point rule."""
    return 0.5 * (hi - lo) * (_samples(g, lo, hi, n) @ gauss_rule(n)[1])


def _legendre_table(t, n):
    """``P_0(t) .. P_{n-1}(t)`` stacked along the last axis."""
    t = np.asarray(t, dtype=float)
    out = np.empty(t.shape + (n,))
    out[..., 0] = 1.0
    if n > 1:
        out[..., 1] = t
    for k in range(1, n - 1):
        out[..., k + 1] = ((2 * k + 1) * t * out[..., k] - k * out[..., k - 1]) / (k + 1)
    return out


def _legendre_coefficients(samples):
    """Legendre coefficients of the interpolant through 16 Gauss samples per row."""
    t, w = gauss_rule(16)
    table = _legendre_table(t, 16)                          # (16 nodes, 16 degrees)
    norm = (2 * np.arange(16) + 1) / 2.0
    return (samples * w) @ table * norm


def _refine(g, lo, hi, tol, max_panels):
    """Return accepted panels, their 16-point integrals and the samples behind them."""
    total_len = float(np.sum(hi - lo))
    acc_lo, acc_hi, acc_val, acc_samples = [], [], [], []
    scale = None
    while lo.size:
        if lo.size + sum(v.size for v in acc_val) > max_panels:
            raise QuadratureFailure(f"more than {max_panels} panels needed")
        samples = _samples(g, lo, hi, 16)
        fine = 0.5 * (hi - lo) * (samples @ gauss_rule(16)[1])
        coarse = panel_sums(g, lo, hi, 8)
        if not np.all(np.isfinite(fine)):
            raise QuadratureFailure("non-finite integrand values")
        if scale is None:
            scale = 1.0 + abs(np.sum(fine))
        err = np.abs(fine - coarse)
        ok = err <= tol * scale * (hi - lo) / total_len
        # panels at rounding level cannot be split further
        tiny = (hi - lo) <= 64 * np.finfo(float).eps * np.maximum(1.0, np.abs(lo))
        ok |= tiny
        acc_lo.append(lo[ok])
        acc_hi.append(hi[ok])
        acc_val.append(fine[ok])
        acc_samples.append(samples[ok])
        bad_lo, bad_hi = lo[~ok], hi[~ok]
        mid = 0.5 * (bad_lo + bad_hi)
        lo = np.concatenate([bad_lo, mid])
        hi = np.concatenate([mid, bad_hi])
    lo = np.concatenate(acc_lo)
    order = np.argsort(lo)
    return (lo[order], np.concatenate(acc_hi)[order], np.concatenate(acc_val)[order],
            np.concatenate(acc_samples)[order])


def integrate(g, edges, tol=1e-10, max_panels=200_000):
    """Integral of vectorised ``g`` over ``[edges[0], edges[-1]]``.

    ``edges`` is an increasing sequence of panel boundaries; the absolute
    error target is ``tol * (1 + |result|)``.
    """
    edges = np.asarray(edges, dtype=float)
    if edges.size < 2 or edges[-1] == edges[0]:
        return 0.0
    vals = _refine(g, edges[:-1], edges[1:], tol, max_panels)[2]
    return np.sum(vals)


class Antiderivative:
    """x -> integral of ``g`` from ``edges[0]`` to ``x`` for any x in range."""

    def __init__(self, g, edges, tol=1e-10, max_panels=200_000):
        edges = np.asarray(edges, dtype=float)
        self.lo_end = edges[0]
        self.hi_end = edges[-1]
        lo, hi, vals, samples = _refine(g, edges[:-1], edges[1:], tol, max_panels)
        self._lo = lo
        self._hi = hi
        self._coef = _legendre_coefficients(samples)
        self._cum = np.concatenate([[0.0], np.cumsum(vals)])
        self.total = self._cum[-1]

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        flat = np.clip(x.ravel(), self.lo_end, self.hi_end)
        idx = np.clip(np.searchsorted(self._lo, flat, side="right") - 1, 0, self._lo.size - 1)
        lo, hi = self._lo[idx], self._hi[idx]
        t = np.clip((2 * flat - lo - hi) / (hi - lo), -1.0, 1.0)
        # int_{-1}^t P_k = (P_{k+1} - P_{k-1}) / (2k + 1) for k >= 1, t + 1 for k = 0
        table = _legendre_table(t, 17)
        prim = np.empty(t.shape + (16,))
        prim[:, 0] = t + 1.0
        k = np.arange(1, 16)
        prim[:, 1:] = (table[:, 2:] - table[:, :-2]) / (2 * k + 1)
        partial = 0.5 * (hi - lo) * np.einsum("mk,mk->m", self._coef[idx], prim)
        out = self._cum[idx] + partial
        return out.reshape(x.shape) if x.ndim else out[0]
