"""The operator (f, T'_b f) -> (-f'' + q f, -T_b f) is symmetric.

The boundary term (Delta34/Delta0) f1 conj(g1) in the inner product is
what makes it so: drop it and the symmetry defect becomes O(1).  We also
count zeros of omega inside a box above the real axis; there are none.
"""
import numpy as np

from sturm_transmission import (PolyElement, apply_A, inner_product, make_domain_element,
                                symmetry_defect, winding_number)
from sturm_transmission.checks import random_domain_element

from _common import load

p = load("P0")
F = PolyElement([0, 0, 1], [0, 0, 1], 4.0)          # (x^2, T'_b x^2)
G = PolyElement([0, 1], [0, 1], 1.0)                # (x, T'_b x)
print("<AF, G> =", inner_product(p, apply_A(p, F), G))
print("<F, AG> =", inner_product(p, F, apply_A(p, G)))

w = p.minors.d34 / p.delta0
drop = lambda u, v: inner_product(p, u, v) - w * u.f1 * np.conj(v.f1)
print("without the boundary term:", drop(apply_A(p, F), G), "vs", drop(F, apply_A(p, G)))

# projecting raw polynomials onto the domain
D = make_domain_element(p, [1.0, 1.0], [1.0, 1.0])
print("\nprojected (1 + x): left coeffs", np.round(D.left.coef, 12), " f1 =", round(D.f1, 12))

rng = np.random.default_rng(1)
p1 = load("P1")
defects = [symmetry_defect(p1, random_domain_element(p1, rng), random_domain_element(p1, rng))
           for _ in range(20)]
print("largest symmetry defect over 20 random pairs on P1:", f"{max(defects):.1e}")

for name in ("P0", "P1"):
    n = winding_number(load(name), 0.0, 50.0, 0.1, 5.0)
    print(f"{name}: zeros of omega in [0, 50] x [0.1i, 5i] = {n:.3f}")
