"""Elements ``F = (f, f1)`` of ``L2[a, c) + L2(c, b] + C``.

A piece is any vectorised callable on its closed side.  Pieces may come
with derivative callables (needed by the boundary functionals) and with a
mesh of breakpoints that quadrature should respect.
"""
from __future__ import annotations

import numbers

import numpy as np
from numpy.polynomial import Polynomial

from .problem import LEFT


def _lin(fa, fb, ca, cb):
    if fa is None or fb is None:
        return None
    return lambda x: ca * fa(x) + cb * fb(x)


def _merge_mesh(ma, mb):
    if ma is None:
        return mb
    if mb is None:
        return ma
    return np.union1d(ma, mb)


class H1Element:
    def __init__(self, left, right, f1=0.0, dleft=None, dright=None,
                 mesh_left=None, mesh_right=None):
        self.left = left
        self.right = right
        self.f1 = f1
        self.dleft = dleft
        self.dright = dright
        self.mesh_left = mesh_left
        self.mesh_right = mesh_right

    def piece(self, side):
        return self.left if side == LEFT else self.right

    def dpiece(self, side):
        return self.dleft if side == LEFT else self.dright

    def mesh(self, side):
        return self.mesh_left if side == LEFT else self.mesh_right

    @property
    def has_derivatives(self):
        return self.dleft is not None and self.dright is not None

    def _combine(self, other, ca, cb):
        return H1Element(_lin(self.left, other.left, ca, cb),
                         _lin(self.right, other.right, ca, cb),
                         ca * self.f1 + cb * other.f1,
                         _lin(self.dleft, other.dleft, ca, cb),
                         _lin(self.dright, other.dright, ca, cb),
                         _merge_mesh(self.mesh_left, other.mesh_left),
                         _merge_mesh(self.mesh_right, other.mesh_right))

    def __add__(self, other):
        return self._combine(other, 1.0, 1.0)

    def __sub__(self, other):
        return self._combine(other, 1.0, -1.0)

    def __mul__(self, s):
        if not isinstance(s, numbers.Number):
            return NotImplemented
        def scaled(f):
            return None if f is None else (lambda x: s * f(x))

        return H1Element(scaled(self.left), scaled(self.right), s * self.f1,
                         scaled(self.dleft), scaled(self.dright),
                         self.mesh_left, self.mesh_right)

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def __truediv__(self, s):
        return self * (1.0 / s)


class PolyElement(H1Element):
    """Element with polynomial pieces (``numpy.polynomial.Polynomial``)."""

    def __init__(self, left, right, f1=0.0):
        left = left if isinstance(left, Polynomial) else Polynomial(np.atleast_1d(left))
        right = right if isinstance(right, Polynomial) else Polynomial(np.atleast_1d(right))
        super().__init__(left, right, f1, left.deriv(), right.deriv())

    @property
    def degree(self):
        return max(self.left.degree(), self.right.degree())

    def _combine(self, other, ca, cb):
        if isinstance(other, PolyElement):
            return PolyElement(ca * self.left + cb * other.left,
                               ca * self.right + cb * other.right,
                               ca * self.f1 + cb * other.f1)
        return super()._combine(other, ca, cb)

    def __mul__(self, s):
        if not isinstance(s, numbers.Number):
            return NotImplemented
        return PolyElement(s * self.left, s * self.right, s * self.f1)

    __rmul__ = __mul__

    def __repr__(self):
        return (f"PolyElement(left={self.left.coef.tolist()}, "
                f"right={self.right.coef.tolist()}, f1={self.f1})")


class DomainElement(PolyElement):
    """PolyElement known to satisfy the left, transmission and f1 constraints."""
