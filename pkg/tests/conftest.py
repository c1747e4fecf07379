import numpy as np
import pytest

from helpers import P0_COEFFS, P1_COEFFS, build


@pytest.fixture(scope="session")
def p0():
    return build(P0_COEFFS)


@pytest.fixture(scope="session")
def p1():
    return build(P1_COEFFS)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, whether it passed or failed
    import sys
    module = sys.modules.get("test_acceptance")
    if module is None or not getattr(module, "REPORT", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in module.REPORT:
        terminalreporter.write_line(line)
