"""Resolution-independent kernel descriptions and their grid discretization.

Level ``n`` uses the midpoint grid ``g_i = (i + 1/2)/n`` with cells
``C_i = [i/n, (i+1)/n)``.  Row ``i`` of the discretized operator is
``mu_{g_i}`` aggregated by cells: a density contributes ``expr(g_i, g_j)/n``
to column ``j`` (midpoint rule) and an atom contributes its full weight to the
column of the cell containing it.

Midpoints never coincide with 0 or 1, and for odd ``n`` never with 1/2.  This
is the finite stand-in for the Baire argument that evaluation points can avoid
the countably many atom locations: with a suitable level, grid rows whose own
cell holds no atom have a zero self-atom.  An atom sitting exactly on a cell
boundary is an input error; it is never split between cells.

Atom locations are kept as exact rationals.  A float location is taken at its
exact binary value, so ``1/3`` written as a float lies strictly below 1/3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .expression import Expression, evaluate, is_rational, parse_expression, variables
from .operator import KernelOperator, kernel
from .measure import DiscreteSpace
from .rng import SplitMix64
from .scalars import DEFAULT_TOL, ComplexRational, InputError, is_zero, to_fraction


def _expr(e, allowed: set[str], what: str) -> Expression:
    node = parse_expression(e) if isinstance(e, str) else e
    extra = variables(node) - allowed
    if extra:
        names = ", ".join(sorted(extra))
        raise InputError(f"{what} may only use {sorted(allowed) or 'no variables'}, found {names}")
    return node


class _Spec:
    def __add__(self, other):
        if not isinstance(other, _Spec):
            return NotImplemented
        left = self.parts if isinstance(self, SumSpec) else (self,)
        right = other.parts if isinstance(other, SumSpec) else (other,)
        return SumSpec(left + right)


@dataclass(frozen=True)
class DensityMeasure:
    """A measure with density ``expr(t)`` on [0, 1]."""

    expr: Expression

    def __post_init__(self):
        object.__setattr__(self, "expr", _expr(self.expr, {"t"}, "measure density"))


@dataclass(frozen=True)
class AtomList:
    """A finite atomic measure: ``((location, weight), ...)``."""

    atoms: tuple

    def __post_init__(self):
        atoms = tuple((_location(loc), to_fraction(w)) for loc, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)


MeasureSpec = DensityMeasure | AtomList


@dataclass(frozen=True)
class Density(_Spec):
    """``mu_s`` has density ``t -> expr(s, t)``."""

    expr: Expression

    def __post_init__(self):
        object.__setattr__(self, "expr", _expr(self.expr, {"s", "t"}, "density"))


@dataclass(frozen=True)
class RankOne(_Spec):
    """``mu_s = shape(s) * measure``."""

    shape: Expression
    measure: MeasureSpec

    def __post_init__(self):
        object.__setattr__(self, "shape", _expr(self.shape, {"s"}, "rank-one shape"))


@dataclass(frozen=True)
class C0Factored(_Spec):
    """``mu_s = sum_k coef_k(s) * rho_k``: an operator factored through c0."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((_expr(c, {"s"}, "coefficient"), m) for c, m in self.terms)
        if not terms:
            raise InputError("c0_factored needs at least one term")
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class Atomic(_Spec):
    """Purely atomic rows: weight ``w(s)`` at each fixed location."""

    points: tuple

    def __post_init__(self):
        pts = tuple((_location(loc), _expr(w, {"s"}, "atom weight")) for loc, w in self.points)
        object.__setattr__(self, "points", pts)


@dataclass(frozen=True)
class SumSpec(_Spec):
    parts: tuple


KernelSpec = Density | RankOne | C0Factored | Atomic | SumSpec


def _location(loc) -> Fraction:
    x = to_fraction(loc)
    if not 0 <= x <= 1:
        raise InputError(f"atom location {loc!r} outside [0, 1]")
    return x


# --------------------------------------------------------------------------
# grid


def grid_points(n: int, exact: bool = False):
    if exact:
        return [Fraction(2 * i + 1, 2 * n) for i in range(n)]
    return (np.arange(n) + 0.5) / n


def cell_index(location, n: int) -> int:
    """Index of the cell containing ``location``; boundaries are refused."""
    x = _location(location) * n
    if x.denominator == 1:
        raise InputError(
            f"atom at {location} lies on a cell boundary at level {n}; "
            "choose another level (odd levels avoid 1/2) or move the atom"
        )
    return int(x)


def spec_is_rational(spec: KernelSpec) -> bool:
    match spec:
        case Density(expr):
            return is_rational(expr)
        case RankOne(shape, meas):
            return is_rational(shape) and _measure_is_rational(meas)
        case C0Factored(terms):
            return all(is_rational(c) and _measure_is_rational(m) for c, m in terms)
        case Atomic(points):
            return all(is_rational(w) for _, w in points)
        case SumSpec(parts):
            return all(spec_is_rational(p) for p in parts)
    raise TypeError(f"not a kernel spec: {spec!r}")


def _measure_is_rational(m: MeasureSpec) -> bool:
    return is_rational(m.expr) if isinstance(m, DensityMeasure) else True


def _fill(value, shape, exact: bool) -> np.ndarray:
    out = np.empty(shape, dtype=object if exact else float)
    out[...] = value
    return out


def _zeros(shape, exact: bool) -> np.ndarray:
    return _fill(Fraction(0) if exact else 0.0, shape, exact)


def _weight(w: Fraction, exact: bool):
    return w if exact else float(w)


def _measure_row(m: MeasureSpec, n: int, exact: bool) -> np.ndarray:
    g = grid_points(n, exact)
    if isinstance(m, DensityMeasure):
        t = np.array(g, dtype=object) if exact else g
        return _fill(evaluate(m.expr, t=t, exact=exact), (n,), exact) / n
    row = _zeros((n,), exact)
    for loc, w in m.atoms:
        row[cell_index(loc, n)] += _weight(w, exact)
    return row


def _column(expr: Expression, n: int, exact: bool) -> np.ndarray:
    g = grid_points(n, exact)
    s = np.array(g, dtype=object) if exact else g
    return _fill(evaluate(expr, s=s, exact=exact), (n,), exact)


def _matrix(spec: KernelSpec, n: int, exact: bool) -> np.ndarray:
    match spec:
        case Density(expr):
            g = grid_points(n, exact)
            col = np.array(g, dtype=object) if exact else np.asarray(g)
            vals = evaluate(expr, s=col[:, None], t=col[None, :], exact=exact)
            return _fill(vals, (n, n), exact) / n
        case RankOne(shape, meas):
            return np.multiply.outer(_column(shape, n, exact), _measure_row(meas, n, exact))
        case C0Factored(terms):
            out = _zeros((n, n), exact)
            for coef, meas in terms:
                out = out + np.multiply.outer(_column(coef, n, exact), _measure_row(meas, n, exact))
            return out
        case Atomic(points):
            out = _zeros((n, n), exact)
            for loc, w in points:
                out[:, cell_index(loc, n)] += _column(w, n, exact)
            return out
        case SumSpec(parts):
            out = _zeros((n, n), exact)
            for p in parts:
                out = out + _matrix(p, n, exact)
            return out
    raise TypeError(f"not a kernel spec: {spec!r}")


def discretize(spec: KernelSpec, n: int, scalar: str = "auto", tol: float = DEFAULT_TOL) -> KernelOperator:
    """Kernel operator of ``spec`` on the level-``n`` midpoint grid.

    ``scalar="auto"`` is exact when every expression is rational.
    """
    if int(n) != n or n < 2:
        raise InputError(f"level must be an integer >= 2, got {n!r}")
    n = int(n)
    if scalar == "auto":
        exact = spec_is_rational(spec)
    elif scalar in ("exact", "float"):
        exact = scalar == "exact"
        if exact and not spec_is_rational(spec):
            raise InputError("spec uses pi/sin/cos and cannot be discretized exactly")
    else:
        raise InputError(f"unknown scalar mode {scalar!r}")
    m = _matrix(spec, n, exact)
    space = DiscreteSpace(n, tuple(grid_points(n, exact)))
    return KernelOperator(m, space, None if exact else tol)


def zero_atom_points(T: KernelOperator) -> frozenset[int]:
    """Columns carrying no atom of any row: the grid shadow of S'."""
    return frozenset(
        t for t in range(T.n) if all(is_zero(x, T.tol) for x in T.matrix[:, t])
    )


# --------------------------------------------------------------------------
# presets


def neg_dirac_half() -> C0Factored:
    """Every row is ``-delta_{1/2}``."""
    return C0Factored((("-1", AtomList(((Fraction(1, 2), 1),))),))


def three_atom_factored() -> C0Factored:
    """Three factor measures at the float locations 1/3, 1/2, 2/3.

    Coefficients ``(-s, -s*s, s-1)`` give row norm ``1 + s*s``, largest on the
    last grid row, whose cell carries no atom; the atom rows have negative
    self-atoms.
    """
    return C0Factored(
        (
            ("-s", AtomList(((1 / 3, 1),))),
            ("-s*s", AtomList(((1 / 2, 1),))),
            ("s-1", AtomList(((2 / 3, 1),))),
        )
    )


def cos_kernel() -> Density:
    return Density("cos(pi*(s+t))")


PRESETS = {
    "neg-dirac-half": neg_dirac_half,
    "three-atom-factored": three_atom_factored,
    "cos-kernel": cos_kernel,
}


# --------------------------------------------------------------------------
# random kernels

KERNEL_CLASSES = ("signed", "positive", "rational-signed", "rational-complex", "complex")


def _pythagorean_unit(rng: SplitMix64) -> ComplexRational:
    a, b = rng.integer(1, 8), rng.integer(0, 8)
    h = a * a + b * b
    u = ComplexRational(Fraction(a * a - b * b, h), Fraction(2 * a * b, h))
    for _ in range(rng.below(4)):
        u = u * ComplexRational(0, 1)
    return u


def _rational(rng: SplitMix64, magnitude: Fraction, max_den: int) -> Fraction:
    q = rng.integer(1, max_den)
    k = int(magnitude * q)
    return Fraction(rng.integer(-k, k), q)


def random_kernel(kind: str, n: int, seed: int, magnitude=1) -> KernelOperator:
    """Deterministic random kernel of the given class.

    ``rational-signed`` entries are exact ``p/q`` with ``q <= 64``;
    ``rational-complex`` entries are Gaussian rationals of rational modulus
    (Pythagorean directions), so exact moduli stay rational.
    """
    if kind not in KERNEL_CLASSES:
        raise InputError(f"unknown kernel class {kind!r}; choose from {', '.join(KERNEL_CLASSES)}")
    if n < 1:
        raise InputError("n must be >= 1")
    rng = SplitMix64(seed)
    mag = to_fraction(magnitude)
    size = n * n
    if kind == "signed":
        vals = [(2 * rng.uniform() - 1) * float(mag) for _ in range(size)]
        return kernel(np.reshape(vals, (n, n)), "float")
    if kind == "positive":
        vals = [rng.uniform() * float(mag) for _ in range(size)]
        return kernel(np.reshape(vals, (n, n)), "float")
    if kind == "complex":
        vals = [complex(2 * rng.uniform() - 1, 2 * rng.uniform() - 1) * float(mag) for _ in range(size)]
        return kernel(np.reshape(np.array(vals, dtype=complex), (n, n)), "float")
    if kind == "rational-signed":
        vals = [_rational(rng, mag, 64) for _ in range(size)]
    else:
        vals = []
        for _ in range(size):
            choice = rng.below(5)
            if choice == 0:
                vals.append(Fraction(0))
            elif choice == 1:
                vals.append(_rational(rng, mag, 16))
            else:
                rho = abs(_rational(rng, mag, 16))
                vals.append(_pythagorean_unit(rng) * rho)
    rows = [vals[i * n : (i + 1) * n] for i in range(n)]
    return kernel(rows, "exact")
