from decimal import Decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from daugavet.scalars import (
    ComplexRational,
    InputError,
    Surd,
    exact_sqrt,
    format_scalar,
    geq,
    modulus,
    rational_modulus,
    to_exact,
    to_fraction,
)

mpmath.mp.dps = 60
nonneg = st.fractions(min_value=0, max_value=50, max_denominator=40)
anyq = st.fractions(min_value=-20, max_value=20, max_denominator=40)


def test_to_fraction_is_exact():
    assert to_fraction("3/6") == Fraction(1, 2)
    assert to_fraction(Decimal("0.1")) == Fraction(1, 10)
    assert to_fraction(0.1) == Fraction(0.1)  # binary value, not 1/10
    with pytest.raises(InputError):
        to_fraction("1/0")
    with pytest.raises(InputError):
        to_fraction(True)


def test_exact_sqrt():
    assert exact_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert exact_sqrt(Fraction(2)) is None


def test_complex_rational_arithmetic():
    i = ComplexRational(0, 1)
    assert i * i == -1
    assert (1 + i) * (1 - i) == 2
    z = ComplexRational("3/10", "2/5")
    assert modulus(z) == Fraction(1, 2)
    assert z.conjugate() / Fraction(1, 2) == ComplexRational("3/5", "-4/5")
    assert to_exact([1, 0]) == Fraction(1)
    assert isinstance(modulus(1 + i), Surd)
    with pytest.raises(InputError):
        rational_modulus(1 + i)


@given(nonneg, nonneg, anyq, anyq)
def test_surd_ordering_matches_high_precision(a1, a2, r1, r2):
    x, y = Surd.make(r1, a1), Surd.make(r2, a2)
    hx = mpmath.mpf(r1.numerator) / r1.denominator + mpmath.sqrt(mpmath.mpf(a1.numerator) / a1.denominator)
    hy = mpmath.mpf(r2.numerator) / r2.denominator + mpmath.sqrt(mpmath.mpf(a2.numerator) / a2.denominator)
    if abs(hx - hy) > mpmath.mpf(10) ** -40:
        assert (x < y) == (hx < hy)
        assert x != y
    else:
        assert x == y


def test_surd_folds_perfect_squares():
    assert Surd.make(1, Fraction(4, 9)) == Fraction(5, 3)
    assert isinstance(Surd.make(1, Fraction(4, 9)), Fraction)
    assert Surd.make(0, 2) + 1 > Fraction(24, 10)
    assert Surd.make(0, 2) + 1 < Fraction(25, 10)


def test_geq_tolerance():
    assert geq(1 - 1e-12, 1.0, 1e-9)
    assert not geq(1 - 1e-6, 1.0, 1e-9)
    assert not geq(Fraction(999999, 10**6), 1, None)


@pytest.mark.parametrize(
    "x, text",
    [(Fraction(5, 4), "1.25"), (Fraction(1, 3), "1/3"), (Fraction(2), "2"), (0.5, "0.5")],
)
def test_format_scalar(x, text):
    assert format_scalar(x) == text
