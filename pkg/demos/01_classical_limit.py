"""Identity coupling: the transmission point is invisible.

With rows (1 0 -1 0) and (0 1 0 -1) the solution and its derivative are
continuous at c, so the problem is a classical one on [0, 2] with the
boundary condition y(2) + lam y'(2) = 0.  For q = 0 the positive
eigenvalues are s^2 with sin(2s) + s^3 cos(2s) = 0, which we solve here
with a plain bisection and compare against the shooting solver.
"""
import math

import numpy as np
from scipy.optimize import brentq

from sturm_transmission import char_fn, eigenpairs_in, eigenvalues_in

from _common import load

p = load("P0")
print("Delta12 =", p.minors.d12, " Delta34 =", p.minors.d34, " Delta0 =", p.delta0)

# closed-form oracle, one root per sign change of the scan
f = lambda s: math.sin(2 * s) + s ** 3 * math.cos(2 * s)
s = np.linspace(1e-3, 16.0, 20001)
v = np.array([f(t) for t in s])
roots = [brentq(f, s[i], s[i + 1], xtol=1e-15) ** 2 for i in np.flatnonzero(v[:-1] * v[1:] < 0)]

found = eigenvalues_in(p, 0.0, 100.0)
print(f"\n{'n':>3} {'shooting':>22} {'closed form':>22} {'rel. diff':>10}")
for n, (lam, ref) in enumerate(zip(found, roots)):
    print(f"{n:3d} {lam:22.15f} {ref:22.15f} {abs(lam - ref) / ref:10.1e}")

# the eigenparameter in the boundary condition also admits a negative eigenvalue
neg = eigenvalues_in(p, -5.0, 0.0)
print("\nnegative eigenvalues in [-5, 0]:", neg)

# omega changes sign at each eigenvalue and nowhere else
lam = np.linspace(-2.0, 20.0, 12)
print("\nlambda      omega")
for x in lam:
    print(f"{x:7.2f}  {char_fn(p, x).omega: .6e}")

# the first eigenfunction is sin(s1 x) up to normalization
pair = eigenpairs_in(p, 0.0, 2.0)[0]
s1 = math.sqrt(pair.lam)
u = pair.eigenfunction
x_left, x_right = np.linspace(0.1, 0.9, 4), np.linspace(1.1, 1.9, 4)
ratio = np.concatenate([u.left(x_left) / np.sin(s1 * x_left),
                        u.right(x_right) / np.sin(s1 * x_right)])
print("\nu(x) / sin(s1 x):", np.round(ratio, 10))
