import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from daugavet.operator import kernel

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=12)


@st.composite
def rational_kernels(draw, max_n=5):
    n = draw(st.integers(1, max_n))
    rows = [[draw(rationals) for _ in range(n)] for _ in range(n)]
    return kernel(rows, "exact")


@st.composite
def float_kernels(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    vals = st.floats(-2, 2, allow_nan=False, allow_infinity=False)
    return kernel([[draw(vals) for _ in range(n)] for _ in range(n)], "float")


@pytest.fixture
def F():
    return Fraction


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[number])
