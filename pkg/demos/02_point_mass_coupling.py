"""A genuine interface: y(c+) = 2 y(c-) and y'(c+) = y'(c-) / 2.

The coupling matrix has Delta12 = Delta34 = 2, so the weighted space keeps
both sides in balance while eigenfunctions jump at c.  The spectrum is
compared with the one obtained by propagating the exact sine/cosine
solutions through the interface by hand.
"""
import math

import numpy as np
from scipy.optimize import brentq

from sturm_transmission import eigenpairs_in, eigenvalues_in, inner_product, orthogonality_defect

from _common import load

p = load("P1")
m = p.minors
print("minors d12..d34:", m.d12, m.d13, m.d14, m.d23, m.d24, m.d34)


def boundary_residual(lam):
    # phi on [0, 1] is sin(s x)/s, then the jump, then free propagation to 2
    s = complex(lam) ** 0.5 if lam != 0 else 1e-300
    y, dy = (np.sin(s) / s, np.cos(s))
    y, dy = 2 * y, dy / 2
    yb = y * np.cos(s) + dy * np.sin(s) / s
    dyb = -y * s * np.sin(s) + dy * np.cos(s)
    return (yb + lam * dyb).real


grid = np.linspace(-5.0, 60.0, 6501)
vals = np.array([boundary_residual(x) for x in grid])
by_hand = [brentq(boundary_residual, grid[i], grid[i + 1], xtol=1e-14)
           for i in np.flatnonzero(vals[:-1] * vals[1:] < 0)]
found = eigenvalues_in(p, -5.0, 60.0)
print("\nsolver :", np.round(found, 10))
print("by hand:", np.round(by_hand, 10))

pairs = eigenpairs_in(p, -5.0, 60.0)
u = pairs[1].eigenfunction
print(f"\nsecond eigenfunction: u(c-) = {u.left(1.0):.6f}, u(c+) = {u.right(1.0):.6f}")
print(f"                      u'(c-) = {u.dleft(1.0):.6f}, u'(c+) = {u.dright(1.0):.6f}")

gram = np.array([[inner_product(p, a.eigenfunction, b.eigenfunction).real for b in pairs]
                 for a in pairs])
print("\nGram matrix of the eigenfunctions (weighted inner product):")
print(np.array2string(gram, precision=8, suppress_small=True))
worst = max(orthogonality_defect(p, a, b) for i, a in enumerate(pairs) for b in pairs[i + 1:])
print("largest off-diagonal defect:", f"{worst:.2e}")
