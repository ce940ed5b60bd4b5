from fractions import Fraction

import pytest
from hypothesis import settings

from glclab.exact.numfield import field_new
from glclab.numberfield import KLattice

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")

CUBIC = (-1, -3, 0, 1)  # x^3 - 3x - 1, constant term first


@pytest.fixture(scope="session")
def cubic():
    return field_new(CUBIC)


@pytest.fixture(scope="session")
def zalpha(cubic):
    return KLattice.power_basis(cubic)


def F(x):
    return Fraction(x)


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
