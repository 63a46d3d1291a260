import cmath
import itertools

import pytest
from hypothesis import settings

from olg.core import parse_polynomial
from olg.cyclo import Cyclotomic

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def to_complex(c: Cyclotomic) -> complex:
    """Numerical value in C, used as an independent check of exact arithmetic."""
    z = cmath.exp(2j * cmath.pi / c.m)
    return sum(float(a) * z ** k for k, a in enumerate(c.coefficients))


def monomials(N, maxdeg, mindeg=1):
    return [m for m in itertools.product(range(maxdeg + 1), repeat=N) if mindeg <= sum(m) <= maxdeg]


@pytest.fixture
def W_loop22():
    return parse_polynomial("x1^2*x2 + x2^2*x1")


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
