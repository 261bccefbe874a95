"""Kernel-represented operators on the finite model of C(S).

Row ``s`` of the matrix is the measure ``mu_s``; entry ``(s, t)`` is
``mu_s({t})`` and ``(Tf)(s) = sum_t mu_s({t}) f(t)``.  The sup-norm operator
norm is the largest row total variation.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measure import (
    DiscreteSpace,
    SignedMeasure,
    _is_exact_mode,
    abs_array,
    array_is_complex,
    as_array,
    exact_sum,
)
from .scalars import DEFAULT_TOL, InputError, to_exact, to_float


@dataclass(frozen=True, eq=False)
class KernelOperator:
    matrix: np.ndarray
    space: DiscreteSpace
    tol: float | None = None

    def __post_init__(self):
        n = self.space.n
        if self.matrix.shape != (n, n):
            raise InputError(f"kernel matrix must be {n}x{n}, got shape {self.matrix.shape}")

    @property
    def n(self) -> int:
        return self.space.n

    @property
    def exact(self) -> bool:
        return self.matrix.dtype == object

    @property
    def scalar(self) -> str:
        return "exact" if self.exact else "float"

    @property
    def is_complex(self) -> bool:
        return array_is_complex(self.matrix)

    @property
    def rows(self) -> list[SignedMeasure]:
        return [self.row(s) for s in range(self.n)]

    def row(self, s: int) -> SignedMeasure:
        return SignedMeasure(self.space, self.matrix[self.space.check_point(s)].copy(), self.tol)

    def entry(self, s: int, t: int):
        return self.matrix[self.space.check_point(s), self.space.check_point(t)]

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.matrix).copy()

    def tolist(self) -> list[list]:
        return self.matrix.tolist()

    def __eq__(self, other):
        if not isinstance(other, KernelOperator):
            return NotImplemented
        return (
            self.space.n == other.space.n
            and self.exact == other.exact
            and bool(np.all(self.matrix == other.matrix))
        )

    def __repr__(self):
        return f"KernelOperator({self.scalar}, {self.matrix.tolist()!r})"


def kernel(
    matrix,
    scalar: str = "exact",
    tol: float = DEFAULT_TOL,
    coords=None,
) -> KernelOperator:
    """Build an operator from its matrix view (row s = mu_s)."""
    exact = _is_exact_mode(scalar)
    rows = [list(r) for r in matrix]
    if not rows or any(len(r) != len(rows) for r in rows):
        raise InputError("kernel matrix must be square and nonempty")
    a = as_array(rows, exact)
    return KernelOperator(a, DiscreteSpace(len(rows), coords), None if exact else tol)


def from_rows(rows: list[SignedMeasure]) -> KernelOperator:
    if not rows:
        raise InputError("need at least one row")
    space = rows[0].space
    if len(rows) != space.n or any(r.space != space for r in rows):
        raise InputError("rows must share one space with n rows")
    if len({r.exact for r in rows}) != 1:
        raise InputError("cannot mix exact and float rows")
    return KernelOperator(np.stack([r.weights for r in rows]), space, rows[0].tol)


def identity(n: int, scalar: str = "exact", tol: float = DEFAULT_TOL) -> KernelOperator:
    exact = _is_exact_mode(scalar)
    if exact:
        a = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            a[i, i] = Fraction(1)
        return KernelOperator(a, DiscreteSpace(n), None)
    return KernelOperator(np.eye(n), DiscreteSpace(n), tol)


def zero_operator(n: int, scalar: str = "exact", tol: float = DEFAULT_TOL) -> KernelOperator:
    exact = _is_exact_mode(scalar)
    if exact:
        return KernelOperator(np.full((n, n), Fraction(0), dtype=object), DiscreteSpace(n), None)
    return KernelOperator(np.zeros((n, n)), DiscreteSpace(n), tol)


def with_scalar(T: KernelOperator, scalar: str, tol: float = DEFAULT_TOL) -> KernelOperator:
    """Convert between modes; float -> exact uses the exact binary values."""
    exact = _is_exact_mode(scalar)
    if exact == T.exact:
        return T
    return KernelOperator(as_array(T.matrix, exact), T.space, None if exact else tol)


def apply(T: KernelOperator, f) -> np.ndarray:
    f = list(f)
    if len(f) != T.n:
        raise InputError(f"function has {len(f)} values, operator acts on {T.n} points")
    if T.exact:
        fv = as_array(f, True)
        out = np.empty(T.n, dtype=object)
        for s in range(T.n):
            out[s] = to_exact(exact_sum(T.matrix[s, t] * fv[t] for t in range(T.n)))
        return out
    return T.matrix @ as_array(f, False)


def row_norms(T: KernelOperator) -> np.ndarray:
    mods = abs_array(T.matrix)
    if T.exact:
        out = np.empty(T.n, dtype=object)
        for s in range(T.n):
            out[s] = exact_sum(mods[s])
        return out
    return mods.sum(axis=1)


def sup_operator_norm(T: KernelOperator):
    norms = row_norms(T)
    return max(norms) if T.exact else float(norms.max())


def transpose(T: KernelOperator) -> KernelOperator:
    """Adjoint kernel: entry (s, t) becomes entry (t, s).  Coordinates are kept."""
    return KernelOperator(T.matrix.T.copy(), T.space, T.tol)


def compose(A: KernelOperator, B: KernelOperator) -> KernelOperator:
    """Matrix product ``A @ B`` (apply B first)."""
    if A.space.n != B.space.n:
        raise InputError("operators act on different spaces")
    if A.exact != B.exact:
        raise InputError("cannot mix exact and float operators")
    if A.exact:
        n = A.n
        out = np.empty((n, n), dtype=object)
        for s in range(n):
            for t in range(n):
                out[s, t] = to_exact(exact_sum(A.matrix[s, k] * B.matrix[k, t] for k in range(n)))
        return KernelOperator(out, A.space, None)
    return KernelOperator(A.matrix @ B.matrix, A.space, A.tol)


def add_scaled_operator(A: KernelOperator, c, B: KernelOperator) -> KernelOperator:
    """Entrywise ``A + c*B``."""
    if A.space.n != B.space.n:
        raise InputError("operators act on different spaces")
    if A.exact != B.exact:
        raise InputError("cannot mix exact and float operators")
    if A.exact:
        c = to_exact(c)
        out = np.empty(A.matrix.shape, dtype=object)
        for idx, a in np.ndenumerate(A.matrix):
            out[idx] = to_exact(a + c * B.matrix[idx])
        return KernelOperator(out, A.space, None)
    return KernelOperator(A.matrix + to_float(c) * B.matrix, A.space, A.tol)


def identity_plus(T: KernelOperator, lam=1) -> KernelOperator:
    """The operator ``I + lam*T``."""
    out = add_scaled_operator(identity(T.n, T.scalar, T.tol or DEFAULT_TOL), lam, T)
    return KernelOperator(out.matrix, T.space, T.tol)
