"""Acceptance gate: eleven numbered criteria, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py`` (the lines appear in the terminal
summary) or ``python3 tests/test_acceptance.py`` for the bare table.
"""
import sys

import numpy as np
import pytest

from sturm_transmission import (PolyElement, apply_A, char_fn, eigenpairs_in, eigenvalues_in,
                                green_eval, h1_norm, inner_product, make_problem,
                                orthogonality_defect, residual_report, resolvent_apply,
                                solve_nonhomogeneous, symmetry_defect, winding_number,
                                wronskian_spread)
from sturm_transmission.checks import random_domain_element, random_element
from sturm_transmission.problem import state_scale, tau_transmission

from helpers import P0_COEFFS, P1_COEFFS, build, random_problem
import oracles

REPORT = []
SEED = 7


def record(number, title, value, limit, passed):
    line = f"{'PASS' if passed else 'FAIL'}  [{number:2d}] {title:<44s} {value:.3e}  (limit {limit:.1e})"
    REPORT.append(line)
    print(line)
    return passed


@pytest.fixture(scope="module")
def fixtures():
    return build(P0_COEFFS), build(P1_COEFFS)


def regular_lambda(p, rng, draw):
    """Draw lambda until omega is safely away from zero."""
    while True:
        lam = draw()
        b = char_fn(p, lam)
        if abs(b.omega) > 1e-3 * b.omega_scale:
            return lam, b


def test_01_classical_limit(fixtures):
    p0, _ = fixtures
    expected = oracles.p0_positive(10)
    found = [lam for lam in eigenvalues_in(p0, 0.0, expected[-1] + 10.0)][:10]
    err = max(abs(f - e) / max(1.0, abs(e)) for f, e in zip(found, expected))
    ok = len(found) == 10 and err <= 1e-8 and 1.210 < found[0] < 1.233
    assert record(1, "P0 first 10 positive eigenvalues vs oracle", err, 1e-8, ok)


def test_02_transmission(fixtures):
    rng = np.random.default_rng(SEED)
    tau_worst = jump_worst = 0.0
    for _ in range(100):
        p = random_problem(rng)
        b = char_fn(p, float(rng.uniform(-10, 100)))
        for left, right in ((b.phi_left.end_state, b.phi_right.start_state),
                            (b.psi_left.start_state, b.psi_right.end_state)):
            t3, t4 = tau_transmission(p, *left, *right)
            tau_worst = max(tau_worst, max(abs(t3), abs(t4)) / state_scale(*left, *right))
        jump_worst = max(jump_worst, b.consistency_defect)
    ok = tau_worst <= 1e-9 and jump_worst <= 1e-8
    record(2, "tau3/tau4 residuals, 100 random problems", tau_worst, 1e-9, tau_worst <= 1e-9)
    record(2, "jump identity D34 w+ = D12 w-", jump_worst, 1e-8, jump_worst <= 1e-8)
    assert ok


def test_03_wronskian_constancy(fixtures):
    # relative spread of W is 0/0 at an eigenvalue; lambda is drawn where
    # omega is at least 1% of its natural scale (see test_shooting for the rest)
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    problems = list(fixtures) + [random_problem(rng) for _ in range(100)]
    for p in problems:
        b = None
        while b is None or abs(b.omega) < 1e-2 * b.omega_scale:
            b = char_fn(p, float(rng.uniform(-10, 100)))
        worst = max(worst, wronskian_spread(b.phi_left, b.psi_left),
                    wronskian_spread(b.phi_right, b.psi_right))
    b = char_fn(fixtures[1], 2.0 + 3.0j)
    worst = max(worst, wronskian_spread(b.phi_left, b.psi_left),
                wronskian_spread(b.phi_right, b.psi_right))
    assert record(3, "Wronskian relative spread, 20 points/side", worst, 1e-8, worst <= 1e-8)


def test_04_green_function(fixtures):
    p0, p1 = fixtures
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for p in (p0, p1, random_problem(rng), random_problem(rng), random_problem(rng)):
        _, b = regular_lambda(p, rng, lambda: float(rng.uniform(-10, 60)))
        for _ in range(100):
            x, y = rng.uniform(p.a, p.b, 2)
            g1, g2 = green_eval(p, b, x, y), green_eval(p, b, y, x)
            worst = max(worst, abs(g1 - g2) / abs(g1))
    spot = abs(green_eval(p0, char_fn(p0, 0.0), 1.5, 0.5) + 0.125)
    record(4, "Green symmetry, 500 pairs (relative)", worst, 1e-10, worst <= 1e-10)
    record(4, "G0(1.5, 0.5; 0) = -0.125 on P0", spot, 1e-9, spot <= 1e-9)
    assert worst <= 1e-10 and spot <= 1e-9


def test_05_nonhomogeneous_solve(fixtures):
    p0, _ = fixtures
    y0 = solve_nonhomogeneous(p0, char_fn(p0, 0.0), PolyElement([1.0], [1.0]))
    sup = 0.0
    for side in ("left", "right"):
        lo, hi = p0.interval.side_bounds(side)
        x = np.linspace(lo, hi, 201)
        sup = max(sup, float(np.max(np.abs(y0.piece(side)(x) - (x * x / 2 - x)))))
    record(5, "Y0 = x^2/2 - x on P0 (sup norm)", sup, 1e-8, sup <= 1e-8)

    rng = np.random.default_rng(SEED + 3)
    ode = bnd = 0.0
    for k in range(50):
        p = random_problem(rng)
        if k % 2:
            lam = complex(rng.uniform(-10, 60), rng.uniform(-3, 3))
            b = char_fn(p, lam)
        else:
            lam, b = regular_lambda(p, rng, lambda: float(rng.uniform(-10, 60)))
        F = random_element(p, rng)
        rep = residual_report(p, lam, resolvent_apply(p, b, F), F)
        ode = max(ode, rep.ode / rep.scale)
        bnd = max(bnd, rep.boundary_max() / rep.scale)
    record(5, "ODE residual / scale, 50 random cases", ode, 1e-6, ode <= 1e-6)
    record(5, "tau residuals incl. tau2(Y) - f1, / scale", bnd, 1e-8, bnd <= 1e-8)
    assert sup <= 1e-8 and ode <= 1e-6 and bnd <= 1e-8


def test_06_resolvent_identity():
    rng = np.random.default_rng(SEED + 4)
    worst = 0.0
    for _ in range(50):
        p = random_problem(rng)
        F = random_domain_element(p, rng)
        F = F * (1.0 / h1_norm(p, F))
        AF = apply_A(p, F)
        for lam in (1j, 1 + 1j, 2 - 0.5j):
            Y = resolvent_apply(p, char_fn(p, lam), lam * F - AF)
            worst = max(worst, h1_norm(p, Y - F))
    assert record(6, "R(lam)(lam - A)F = F, 50 elements x 3 lam", worst, 1e-6, worst <= 1e-6)


def test_07_resolvent_bound():
    rng = np.random.default_rng(SEED + 5)
    worst = 0.0
    for _ in range(100):
        p = random_problem(rng)
        F = random_element(p, rng)
        nf = h1_norm(p, F)
        for im in (0.25, 0.5, 1.0, 2.0):
            lam = complex(rng.uniform(-10, 60), im * rng.choice([-1.0, 1.0]))
            Y = resolvent_apply(p, char_fn(p, lam), F)
            worst = max(worst, h1_norm(p, Y) * im / nf)
    assert record(7, "max ||Y|| |Im lam| / ||F||", worst, 1 + 1e-6, worst <= 1 + 1e-6)


def test_08_symmetry(fixtures):
    p0, _ = fixtures
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(100):
        p = random_problem(rng)
        F, G = random_domain_element(p, rng), random_domain_element(p, rng)
        scale = (h1_norm(p, apply_A(p, F)) * h1_norm(p, G)
                 + h1_norm(p, F) * h1_norm(p, apply_A(p, G)))
        worst = max(worst, symmetry_defect(p, F, G) / scale)
    F, G = PolyElement([0, 0, 1], [0, 0, 1], 4.0), PolyElement([0, 1], [0, 1], 1.0)
    lhs = inner_product(p0, apply_A(p0, F), G)
    rhs = inner_product(p0, F, apply_A(p0, G))
    hand = max(abs(lhs + 8.0), abs(rhs + 8.0))
    record(8, "symmetry defect / scale, 100 random pairs", worst, 1e-10, worst <= 1e-10)
    record(8, "<AF,G> = <F,AG> = -8 for (x^2,4), (x,1)", hand, 1e-14, hand <= 1e-14)
    assert worst <= 1e-10 and hand <= 1e-14


def test_09_orthogonality(fixtures):
    worst = 0.0
    counts = []
    for p in fixtures:
        pairs = eigenpairs_in(p, -10.0, 400.0)[:8]
        counts.append(len(pairs))
        for i, u in enumerate(pairs):
            for v in pairs[i + 1:]:
                worst = max(worst, orthogonality_defect(p, u, v))
    ok = counts == [8, 8] and worst <= 1e-8
    assert record(9, "orthogonality, first 8 eigenpairs of P0, P1", worst, 1e-8, ok)


def test_10_no_nonreal_eigenvalues(fixtures):
    values = [winding_number(p, 0.0, 50.0, 0.1, 5.0) for p in fixtures]
    worst = max(abs(v) for v in values)
    ok = all(round(v) == 0 for v in values) and worst < 1e-6
    assert record(10, "winding of omega on [0,50] x [0.1i,5i]", worst, 1e-6, ok)


def test_11_row_scaling_invariance():
    rng = np.random.default_rng(SEED + 7)
    worst = 0.0
    for coeffs in (P0_COEFFS, P1_COEFFS):
        scaled = dict(coeffs, row1=tuple(3.0 * v for v in coeffs["row1"]),
                      row2=tuple(0.5 * v for v in coeffs["row2"]))
        base = eigenvalues_in(build(coeffs), -20.0, 100.0)
        other = eigenvalues_in(build(scaled), -20.0, 100.0)
        assert len(base) == len(other)
        worst = max([worst] + [abs(a - b) for a, b in zip(base, other)])
    for _ in range(3):
        s1, s2 = rng.uniform(0.1, 10.0, 2)
        p = random_problem(rng)
        t = p.transmission
        kw = dict(q_left=p.potential.left_coeffs, q_right=p.potential.right_coeffs,
                  alpha10=p.left.alpha10, alpha11=p.left.alpha11, alpha20=p.right.alpha20,
                  alpha21=p.right.alpha21, alpha20p=p.right.alpha20p, alpha21p=p.right.alpha21p)
        q = make_problem(p.a, p.c, p.b, row1=tuple(s1 * v for v in t.row1),
                         row2=tuple(s2 * v for v in t.row2), **kw)
        base, other = eigenvalues_in(p, -20.0, 100.0), eigenvalues_in(q, -20.0, 100.0)
        assert len(base) == len(other)
        worst = max([worst] + [abs(a - b) for a, b in zip(base, other)])
    assert record(11, "eigenvalue shift under positive row scaling", worst, 1e-9, worst <= 1e-9)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
