"""Sturm-Liouville problems with one interior transmission point.

The equation ``-y'' + q y = lam y`` is posed on ``[a, c) U (c, b]`` with a
separated condition at ``a``, a condition at ``b`` that depends linearly on
``lam``, and two linear transmission conditions coupling the one-sided
values and derivatives at ``c``.  The package provides

* problem definitions and validation (:mod:`.problem`),
* an adaptive Dormand-Prince integrator with dense output (:mod:`.ivp`),
* the basis solutions and characteristic function (:mod:`.shooting`),
* eigenvalues, eigenfunctions and zero counting (:mod:`.spectrum`),
* the Green's function and resolvent (:mod:`.greens`),
* the weighted space ``L2 + C`` and the operator ``A`` (:mod:`.hilbert`),
* a file-driven command line (:mod:`.cli`).
"""
from .elements import DomainElement, H1Element, PolyElement
from .errors import *  # noqa: F401,F403
from .greens import (GreenVector, ResidualReport, green_eval, green_vector,
                     residual_report, resolvent_apply, resolvent_via_green,
                     solve_nonhomogeneous)
from .hilbert import (T_b, T_b_prime, apply_A, h1_norm, in_domain, inner_product,
                      lagrange_boundary_terms, make_domain_element,
                      orthogonality_defect, std_norm, symmetry_defect)
from .ivp import DEFAULT_TOL, Branch, Tolerances, eval_branch, integral_against, integrate_ivp
from .problem import (FULL, LEFT, RIGHT, SPECTRUM_ONLY, BoundaryLeft, BoundaryRight,
                      Interval, Minors, Potential, Problem, Transmission,
                      compute_minors, eval_potential, make_problem, validate_problem)
from .shooting import (BasisAtLambda, build_phi, build_psi, char_fn, omega_value,
                       transmission_backward, transmission_forward, wronskian_at,
                       wronskian_spread)
from .spectrum import (Bracket, Eigenpair, Eigenvalue, eigenfunction, eigenpairs_in,
                       eigenvalues_in, find_eigenvalues, refine_eigenvalue,
                       scan_brackets, winding_number)
from .config import parse_config, parse_rhs, print_config

__version__ = "0.1.0"
