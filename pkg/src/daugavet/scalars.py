"""Scalar helpers shared by every module.

Two scalar modes exist:

* exact -- entries are :class:`fractions.Fraction` or :class:`ComplexRational`
  held in numpy ``object`` arrays; arithmetic never rounds and comparisons use
  no tolerance.
* float -- entries are numpy ``float64``/``complex128``; every comparison that
  decides set membership goes through :func:`geq` / :func:`is_zero` with an
  explicit tolerance.

Exact complex moduli are only rational when ``re**2 + im**2`` is a rational
square.  Sums like ``|1 + lam*d| + r`` are represented by :class:`Surd`
(``rational + sqrt(radicand)``), which compares exactly.
"""
from __future__ import annotations

import math
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import total_ordering

import numpy as np

DEFAULT_TOL = 1e-9


class InputError(ValueError):
    """Malformed or out-of-range input to a public operation."""


# --------------------------------------------------------------------------
# conversion


def to_fraction(x) -> Fraction:
    """Convert ints, Fractions, Decimals, ``"p/q"`` strings or floats exactly.

    Floats are converted by their exact binary value, never by their repr.
    """
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise InputError(f"non-finite number: {x!r}")
        return Fraction(float(x))
    if isinstance(x, Decimal):
        if not x.is_finite():
            raise InputError(f"non-finite number: {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational literal {x!r}") from exc
    raise InputError(f"cannot convert {x!r} to an exact rational")


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Return ``sqrt(q)`` when it is rational, else None."""
    if q < 0:
        raise InputError("square root of a negative number")
    p, d = q.numerator, q.denominator
    rp, rd = math.isqrt(p), math.isqrt(d)
    if rp * rp == p and rd * rd == d:
        return Fraction(rp, rd)
    return None


class ComplexRational:
    """Gaussian rational ``re + im*i`` with Fraction parts."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        object.__setattr__(self, "re", to_fraction(re))
        object.__setattr__(self, "im", to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ComplexRational is immutable")

    @staticmethod
    def _lift(other):
        if isinstance(other, ComplexRational):
            return other
        if isinstance(other, (int, Fraction, np.integer)) and not isinstance(other, bool):
            return ComplexRational(other, 0)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ComplexRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        den = o.abs2()
        if den == 0:
            raise ZeroDivisionError("complex division by zero")
        num = self * o.conjugate()
        return ComplexRational(num.re / den, num.im / den)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return ComplexRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> ComplexRational:
        return ComplexRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __abs__(self):
        return modulus(self)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ComplexRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}i"


def to_exact(x):
    """Exact scalar for ``x``: Fraction, or ComplexRational when ``x`` has an
    imaginary part (Python complex, ComplexRational, or a ``[re, im]`` pair)."""
    if isinstance(x, ComplexRational):
        return x if x.im != 0 else x.re
    if isinstance(x, (complex, np.complexfloating)):
        return to_exact(ComplexRational(x.real, x.imag))
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InputError(f"complex entries are [re, im] pairs, got {x!r}")
        return to_exact(ComplexRational(to_fraction(x[0]), to_fraction(x[1])))
    return to_fraction(x)


def to_float(x):
    """Float (or complex) value of an exact or float scalar."""
    if isinstance(x, (ComplexRational, complex, np.complexfloating)):
        c = complex(x)
        return c if c.imag != 0 else c.real
    if isinstance(x, (list, tuple)):
        if len(x) != 2:
            raise InputError(f"complex entries are [re, im] pairs, got {x!r}")
        return to_float(complex(float(to_fraction(x[0])), float(to_fraction(x[1]))))
    if isinstance(x, str):
        raise InputError(f"rational literal {x!r} is only accepted in exact mode")
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    return float(x)


# --------------------------------------------------------------------------
# surds


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _sign_root_minus(a: Fraction, c: Fraction) -> int:
    # sign(sqrt(a) - c), a >= 0
    if c < 0:
        return 1
    return _sign(a - c * c)


def _sign_two_roots(a1: Fraction, a2: Fraction, c: Fraction) -> int:
    # sign(sqrt(a1) - sqrt(a2) - c), a1, a2 >= 0
    if a1 == a2:
        return _sign(-c)
    if a2 == 0:
        return _sign_root_minus(a1, c)
    if a1 == 0:
        return -_sign_root_minus(a2, -c)
    if a1 < a2:
        return -_sign_two_roots(a2, a1, -c)
    if c <= 0:
        return 1
    # both sides positive: compare squares
    return -_sign_root_minus(4 * a1 * a2, a1 + a2 - c * c)


@total_ordering
class Surd:
    """Exact real ``rational + sqrt(radicand)``.

    Build with :meth:`make`, which folds perfect squares back into a Fraction.
    """

    __slots__ = ("rational", "radicand")

    def __init__(self, rational: Fraction, radicand: Fraction):
        if radicand < 0:
            raise InputError("negative radicand")
        self.rational = to_fraction(rational)
        self.radicand = to_fraction(radicand)

    @classmethod
    def make(cls, rational, radicand):
        rational, radicand = to_fraction(rational), to_fraction(radicand)
        root = exact_sqrt(radicand)
        if root is not None:
            return rational + root
        return cls(rational, radicand)

    @staticmethod
    def _parts(x) -> tuple[Fraction, Fraction]:
        if isinstance(x, Surd):
            return x.rational, x.radicand
        return to_fraction(x), Fraction(0)

    def __add__(self, other):
        if isinstance(other, Surd):
            if other.radicand == 0:
                return Surd.make(self.rational + other.rational, self.radicand)
            if self.radicand == 0:
                return Surd.make(self.rational + other.rational, other.radicand)
            raise TypeError("sum of two irrational surds is not representable")
        if isinstance(other, (int, Fraction)):
            return Surd.make(self.rational + other, self.radicand)
        return NotImplemented

    __radd__ = __add__

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and other >= 0:
            c = Fraction(other)
            return Surd.make(self.rational * c, self.radicand * c * c)
        return NotImplemented

    __rmul__ = __mul__

    def _cmp(self, other) -> int:
        r1, a1 = self._parts(self)
        r2, a2 = self._parts(other)
        return _sign_two_roots(a1, a2, r2 - r1)

    def __eq__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, (Surd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        return hash((self.rational, self.radicand))

    def __float__(self):
        return float(self.rational) + math.sqrt(self.radicand)

    def __repr__(self):
        return f"Surd({str(self.rational)!r}, {str(self.radicand)!r})"

    def __str__(self):
        return f"{self.rational}+sqrt({self.radicand})"


def modulus(z):
    """|z| for any scalar.  Exact complex input gives a Fraction when the
    modulus is rational, otherwise a :class:`Surd`."""
    if isinstance(z, ComplexRational):
        return Surd.make(0, z.abs2())
    return abs(z)


def rational_modulus(z) -> Fraction:
    """|z| as a Fraction; raises when an exact complex modulus is irrational."""
    m = modulus(z)
    if isinstance(m, Surd):
        raise InputError(
            f"modulus of {z} is irrational; exact mode needs complex entries "
            "of rational modulus (use float mode otherwise)"
        )
    return m


# --------------------------------------------------------------------------
# comparisons (the single place where the float tolerance is applied)


def geq(a, b, tol: float | None) -> bool:
    """``a >= b`` exactly, or ``a >= b - tol`` in float mode."""
    if tol is None:
        return a >= b
    return float(a) >= float(b) - tol


def is_zero(a, tol: float | None) -> bool:
    if tol is None:
        return a == 0
    return abs(a) <= tol


def close(a, b, tol: float | None) -> bool:
    if tol is None:
        return a == b
    return abs(float(a) - float(b)) <= tol


def smax(values):
    """Max of exact scalars (Fractions and Surds) or floats."""
    it = iter(values)
    best = next(it)
    for v in it:
        if v > best:
            best = v
    return best


def format_scalar(x) -> str:
    """Human-readable scalar: terminating rationals print as decimals."""
    if isinstance(x, Fraction):
        d = x.denominator
        while d % 2 == 0:
            d //= 2
        while d % 5 == 0:
            d //= 5
        if d == 1:
            with localcontext() as ctx:
                ctx.prec = 2 * (len(str(x.numerator)) + len(str(x.denominator))) + 10
                text = format(Decimal(x.numerator) / Decimal(x.denominator), "f")
            if "." in text:
                text = text.rstrip("0").rstrip(".")
            return text
        return str(x)
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)
