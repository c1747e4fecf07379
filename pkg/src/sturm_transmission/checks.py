"""Numerical certificates for one problem, as run by ``sturm-transmission check``."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List

import numpy as np

from .elements import PolyElement
from .errors import AtEigenvalue, SturmTransmissionError
from .greens import green_eval, resolvent_apply, residual_report
from .hilbert import (apply_A, h1_norm, make_domain_element, orthogonality_defect,
                      symmetry_defect)
from .ivp import DEFAULT_TOL, Tolerances
from .problem import Problem, state_scale, tau1, tau2, tau_transmission
from .shooting import char_fn, wronskian_spread
from .spectrum import eigenpairs_in

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    limit: float
    passed: bool

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<28s} {self.value:.3e} <= {self.limit:.1e}"


def _record(results, name, value, limit):
    results.append(CheckResult(name, float(value), float(limit), bool(value <= limit)))


def random_poly_coeffs(p: Problem, rng, degree):
    """Ascending coefficients of size O(1) on the problem interval."""
    span = max(abs(p.a), abs(p.b), 1.0)
    return rng.standard_normal(degree + 1) / span ** np.arange(degree + 1)


def random_domain_element(p: Problem, rng, max_degree=8):
    dl = int(rng.integers(2, max_degree + 1))
    dr = int(rng.integers(2, max_degree + 1))
    return make_domain_element(p, random_poly_coeffs(p, rng, dl), random_poly_coeffs(p, rng, dr))


def random_element(p: Problem, rng, max_degree=6):
    dl = int(rng.integers(0, max_degree + 1))
    dr = int(rng.integers(0, max_degree + 1))
    f1 = rng.standard_normal() + 1j * rng.standard_normal()
    return PolyElement(random_poly_coeffs(p, rng, dl), random_poly_coeffs(p, rng, dr), f1)


def basis_residuals(p: Problem, basis):
    """Worst scaled residual of the side conditions met by phi and psi."""
    lam = basis.lam
    worst = 0.0
    phi_a = basis.phi_left.start_state
    worst = max(worst, abs(tau1(p, *phi_a)) / state_scale(*phi_a))
    psi_b = basis.psi_right.start_state
    worst = max(worst, abs(tau2(p, lam, *psi_b)) / state_scale(*psi_b))
    for left, right in ((basis.phi_left.end_state, basis.phi_right.start_state),
                        (basis.psi_left.start_state, basis.psi_right.end_state)):
        t3, t4 = tau_transmission(p, *left, *right)
        worst = max(worst, max(abs(t3), abs(t4)) / state_scale(*left, *right))
    return worst


def _regular_real_lambda(p, tol, candidates):
    for lam in candidates:
        basis = char_fn(p, lam, tol)
        if abs(basis.omega) > 1e-3 * basis.omega_scale:
            return basis
    raise AtEigenvalue("no regular real lambda among the candidates")


def run_checks(p: Problem, tol: Tolerances = DEFAULT_TOL, seed: int = 0,
               lmin: float = -50.0, lmax: float = 100.0, n_eigen: int = 6) -> List[CheckResult]:
    rng = np.random.default_rng(seed)
    results: List[CheckResult] = []
    lams = [-5.0, 0.37, 7.3, 41.0, 2.0 + 1.0j]

    bases = [char_fn(p, lam, tol) for lam in lams]
    _record(results, "transmission residuals", max(basis_residuals(p, b) for b in bases), 1e-9)
    spread = max(max(wronskian_spread(b.phi_left, b.psi_left), wronskian_spread(b.phi_right, b.psi_right))
                 for b in bases if abs(b.omega) > 1e-2 * b.omega_scale)
    _record(results, "wronskian constancy", spread, 1e-8)
    _record(results, "jump identity", max(b.consistency_defect for b in bases), 1e-8)

    basis = _regular_real_lambda(p, tol, [0.37, 1.9, 3.3, 5.1, 0.0])
    worst = 0.0
    for _ in range(100):
        x, y = rng.uniform(p.a, p.b, 2)
        if x == p.c or y == p.c:
            continue
        g1, g2 = green_eval(p, basis, x, y), green_eval(p, basis, y, x)
        worst = max(worst, abs(g1 - g2) / max(abs(g1), 1e-300))
    _record(results, "green symmetry", worst, 1e-10)

    worst = 0.0
    for lam in (1.0 + 1.0j, 2.0 - 0.5j):
        b = char_fn(p, lam, tol)
        F = random_element(p, rng)
        rep = residual_report(p, lam, resolvent_apply(p, b, F), F)
        worst = max(worst, rep.ode / (1e-6 * rep.scale), rep.boundary_max() / (1e-8 * rep.scale))
    _record(results, "resolvent residuals / tol", worst, 1.0)

    if not p.delta0 > 0:
        logger.warning("Delta0 = 0: skipping inner-product checks")
        return results

    worst = 0.0
    for _ in range(20):
        F, G = random_domain_element(p, rng), random_domain_element(p, rng)
        scale = h1_norm(p, apply_A(p, F)) * h1_norm(p, G) + h1_norm(p, F) * h1_norm(p, apply_A(p, G))
        worst = max(worst, symmetry_defect(p, F, G) / scale)
    _record(results, "operator symmetry (rel.)", worst, 1e-10)

    try:
        pairs = eigenpairs_in(p, lmin, lmax, tol)[:n_eigen]
    except SturmTransmissionError as exc:
        logger.warning("eigenpair computation failed: %s", exc)
        pairs = []
    worst = 0.0
    for i, u in enumerate(pairs):
        for v in pairs[i + 1:]:
            worst = max(worst, orthogonality_defect(p, u, v))
    _record(results, f"orthogonality ({len(pairs)} pairs)", worst, 1e-8)
    return results
