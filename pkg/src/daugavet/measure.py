"""Atomic signed (or complex) measures on a finite point set.

A measure is stored densely as its weight vector ``weights[t] = mu({t})``.
Exact measures hold Fractions / ComplexRationals in an ``object`` array and
carry ``tol=None``; float measures hold float64/complex128 and a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .scalars import (
    DEFAULT_TOL,
    InputError,
    rational_modulus,
    to_exact,
    to_float,
)


@dataclass(frozen=True)
class DiscreteSpace:
    """Points ``0..n-1``, optionally with strictly increasing coordinates in [0, 1]."""

    n: int
    coords: tuple | None = None

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise InputError(f"space needs a positive number of points, got {self.n!r}")
        if self.coords is not None:
            c = tuple(self.coords)
            object.__setattr__(self, "coords", c)
            if len(c) != self.n:
                raise InputError("coords length must equal n")
            if any(x < 0 or x > 1 for x in c):
                raise InputError("coords must lie in [0, 1]")
            if any(a >= b for a, b in zip(c, c[1:])):
                raise InputError("coords must be strictly increasing")

    def check_point(self, s) -> int:
        if isinstance(s, bool) or int(s) != s or not 0 <= s < self.n:
            raise InputError(f"point {s!r} out of range 0..{self.n - 1}")
        return int(s)


def as_array(values, exact: bool) -> np.ndarray:
    """Convert nested scalar values to an exact object array or a float array."""
    if exact:
        src = np.asarray(values, dtype=object)
        if src.ndim >= 1 and src.size and isinstance(src.flat[0], (list, tuple)):
            raise InputError("ragged or nested input")
        out = np.empty(src.shape, dtype=object)
        for idx, x in np.ndenumerate(src):
            out[idx] = to_exact(x)
        return out
    if isinstance(values, np.ndarray) and values.dtype != object:
        dtype = complex if np.iscomplexobj(values) else float
        return values.astype(dtype, copy=True)
    src = np.asarray(values, dtype=object)
    flat = [to_float(x) for x in src.flat]
    dtype = complex if any(isinstance(x, complex) for x in flat) else float
    return np.array(flat, dtype=dtype).reshape(src.shape)


def array_is_complex(a: np.ndarray) -> bool:
    if a.dtype == object:
        return any(not isinstance(x, Fraction) for x in a.flat)
    return np.iscomplexobj(a)


def abs_array(a: np.ndarray) -> np.ndarray:
    """Entrywise modulus; exact arrays give Fractions (irrational moduli raise)."""
    if a.dtype == object:
        out = np.empty(a.shape, dtype=object)
        for idx, x in np.ndenumerate(a):
            out[idx] = abs(x) if isinstance(x, Fraction) else rational_modulus(x)
        return out
    return np.abs(a)


def exact_sum(values) -> Fraction:
    total = Fraction(0)
    for v in values:
        total += v
    return total


@dataclass(frozen=True, eq=False)
class SignedMeasure:
    space: DiscreteSpace
    weights: np.ndarray
    tol: float | None = None

    def __post_init__(self):
        if self.weights.shape != (self.space.n,):
            raise InputError("weights must have one entry per point")

    @property
    def exact(self) -> bool:
        return self.weights.dtype == object

    def __eq__(self, other):
        if not isinstance(other, SignedMeasure):
            return NotImplemented
        return self.space == other.space and bool(np.all(self.weights == other.weights))

    def __repr__(self):
        return f"SignedMeasure({list(self.weights)!r})"


def measure(weights, scalar: str = "exact", tol: float = DEFAULT_TOL, space: DiscreteSpace | None = None):
    """Build a measure from its weights (``scalar`` is ``"exact"`` or ``"float"``)."""
    exact = _is_exact_mode(scalar)
    w = as_array(list(weights), exact)
    if w.ndim != 1:
        raise InputError("measure weights must be one-dimensional")
    space = space or DiscreteSpace(len(w))
    return SignedMeasure(space, w, None if exact else tol)


def _is_exact_mode(scalar: str) -> bool:
    if scalar not in ("exact", "float"):
        raise InputError(f"scalar mode must be 'exact' or 'float', got {scalar!r}")
    return scalar == "exact"


def zero_measure(space: DiscreteSpace, scalar: str = "exact", tol: float = DEFAULT_TOL) -> SignedMeasure:
    exact = _is_exact_mode(scalar)
    if exact:
        w = np.full(space.n, Fraction(0), dtype=object)
    else:
        w = np.zeros(space.n)
    return SignedMeasure(space, w, None if exact else tol)


def dirac(space: DiscreteSpace, s: int, scalar: str = "exact", tol: float = DEFAULT_TOL) -> SignedMeasure:
    s = space.check_point(s)
    m = zero_measure(space, scalar, tol)
    w = m.weights.copy()
    w[s] = Fraction(1) if m.exact else 1.0
    return SignedMeasure(space, w, m.tol)


def total_variation(m: SignedMeasure):
    """Sum of |weights|, the norm of a measure."""
    if m.exact:
        return exact_sum(abs_array(m.weights))
    return float(np.abs(m.weights).sum())


def atom(m: SignedMeasure, t: int):
    return m.weights[m.space.check_point(t)]


def tv_excluding(m: SignedMeasure, t: int):
    """|m|(S \\ {t})."""
    t = m.space.check_point(t)
    mods = abs_array(m.weights)
    if m.exact:
        return exact_sum(v for i, v in enumerate(mods) if i != t)
    return float(mods.sum() - mods[t])


def add_scaled(a: SignedMeasure, c, b: SignedMeasure) -> SignedMeasure:
    """Pointwise ``a + c*b``."""
    if a.space != b.space:
        raise InputError("measures live on different spaces")
    if a.exact != b.exact:
        raise InputError("cannot mix exact and float measures")
    if a.exact:
        c = to_exact(c)
        w = np.empty(a.space.n, dtype=object)
        for i in range(a.space.n):
            w[i] = to_exact(a.weights[i] + c * b.weights[i])
        return SignedMeasure(a.space, w, None)
    w = a.weights + to_float(c) * b.weights
    return SignedMeasure(a.space, w, a.tol)
