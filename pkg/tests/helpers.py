"""Shared fixtures data and random problem generators for the test suite."""
import numpy as np

from sturm_transmission import make_problem
from sturm_transmission.errors import ProblemValidationError

P0_COEFFS = dict(a=0.0, c=1.0, b=2.0, alpha10=1.0, alpha11=0.0, alpha20=1.0, alpha21=0.0,
                 alpha20p=0.0, alpha21p=-1.0, row1=(1.0, 0.0, -1.0, 0.0), row2=(0.0, 1.0, 0.0, -1.0))
P1_COEFFS = dict(P0_COEFFS, row1=(2.0, 0.0, -1.0, 0.0), row2=(0.0, 1.0, 0.0, -2.0))


def build(coeffs, **kw):
    c = dict(coeffs)
    a, mid, b = c.pop("a"), c.pop("c"), c.pop("b")
    return make_problem(a, mid, b, **c, **kw)


def random_coupling(rng):
    """Transmission rows near an identity coupling; admissibility is checked by the caller."""
    t = rng.uniform(-2, 2, (2, 4))
    t[0, 0] += 2
    t[1, 1] += 2
    t[0, 2] -= 2
    t[1, 3] -= 2
    return t


def random_coeffs(rng, length=2.0):
    """Keyword data for a random admissible zero-potential problem on [0, length]."""
    while True:
        t = random_coupling(rng)
        coeffs = dict(a=0.0, c=float(rng.uniform(0.25, 0.75)) * length, b=length,
                      alpha10=float(rng.uniform(-1, 1)), alpha11=float(rng.uniform(-1, 1)),
                      alpha20=float(rng.uniform(-1, 1)), alpha21=float(rng.uniform(-1, 1)),
                      alpha20p=float(rng.uniform(-1, 1)), alpha21p=float(rng.uniform(-1, 1)),
                      row1=tuple(t[0]), row2=tuple(t[1]))
        try:
            build(coeffs)
        except ProblemValidationError:
            continue
        return coeffs


def random_problem(rng, q_degree=2, length=2.0):
    """Random admissible problem with polynomial potential of the given degree."""
    coeffs = random_coeffs(rng, length)
    return build(coeffs, q_left=tuple(rng.uniform(-3, 3, q_degree + 1)),
                 q_right=tuple(rng.uniform(-3, 3, q_degree + 1)))
