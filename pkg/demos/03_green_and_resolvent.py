"""Green's function and resolvent.

At lam = 0 on the identity-coupled problem the Green's function is
min(x, y) (max(x, y) - 2) / 2 and the resolvent of f = 1 solves
-Y'' = 1 with Y(0) = 0 and Y(2) + 0 * Y'(2) = 0, giving x^2/2 - x.
We also verify the resolvent bound |Im lam| ||Y|| <= ||F||.
"""
import numpy as np

from sturm_transmission import (PolyElement, char_fn, green_eval, h1_norm, residual_report,
                                resolvent_apply, solve_nonhomogeneous)

from _common import load, load_rhs

p = load("P0")
basis = char_fn(p, 0.0)

print("  x     y     G(x, y; 0)      closed form")
for x, y in [(0.2, 0.7), (1.5, 0.5), (0.3, 1.9), (1.7, 1.2)]:
    lo, hi = min(x, y), max(x, y)
    print(f"{x:4.1f}  {y:4.1f}  {green_eval(p, basis, x, y): .12f}  {lo * (hi - 2) / 2: .12f}")

f = load_rhs("rhs_one")
y0 = solve_nonhomogeneous(p, basis, f)
x = np.linspace(0.0, 0.99, 5)
print("\nY0(x) on the left side :", np.round(y0.left(x), 12))
print("x^2/2 - x             :", np.round(x * x / 2 - x, 12))

# a boundary datum alone produces Y = x/2 with second component 1/2
F = PolyElement([0.0], [0.0], 1.0)
Y = resolvent_apply(p, basis, F)
print(f"\nF = (0, 1): Y(1.5) = {Y.right(1.5):.12f}, second component = {Y.f1:.12f}")
rep = residual_report(p, 0.0, Y, F)
print(f"ODE residual {rep.ode:.1e}, largest boundary residual {rep.boundary_max():.1e}")

p1 = load("P1")
F = PolyElement([1.0, -2.0, 0.5], [0.3, 1.0], 2.0 - 1.0j)
print("\n Im lam    |Im lam| ||Y|| / ||F||")
for im in (0.25, 0.5, 1.0, 2.0, 8.0):
    lam = 3.0 + 1j * im
    Y = resolvent_apply(p1, char_fn(p1, lam), F)
    print(f"{im:6.2f}     {im * h1_norm(p1, Y) / h1_norm(p1, F):.6f}")
