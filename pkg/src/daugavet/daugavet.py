"""Norms of ``I + lam*T``, the Daugavet defect and its finite criteria.

Every row contributes independently: with ``d_s = mu_s({s})`` and
``r_s = |mu_s|(S \\ {s})``,

    ||I + lam*T|| = max_s ( |1 + lam*d_s| + |lam| * r_s ),
    1 + ||T||     = max_s ( 1 + |d_s| + r_s ).

A row reaches ``1 + ||T||`` exactly when it attains the norm and has
``d_s >= 0``, so on a finite space the defect vanishes iff some norm-attaining
row has a nonnegative self-atom.  Summing the per-row slack
``(||T|| - ||mu_s||) + (1 + |d_s| - |1 + d_s|)`` gives
``defect_upper_bound``; it coincides with the defect for real kernels.

:func:`brute_force_norm` is an independent oracle: it enumerates the extreme
points (sign vectors) of the sup-norm unit ball and never looks at row sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measure import abs_array, exact_sum
from .operator import KernelOperator, identity_plus
from .scalars import (
    InputError,
    ComplexRational,
    geq,
    modulus,
    rational_modulus,
    smax,
    to_exact,
    to_float,
)

BRUTE_FORCE_MAX_N = 20


class SizeError(InputError):
    """Refused: the requested enumeration is too large."""


@dataclass(frozen=True)
class RowStat:
    s: int
    d: object
    r: object
    rownorm: object
    attains: bool


@dataclass(frozen=True)
class DaugavetReport:
    opnorm: object
    norm_id_plus: object
    norm_id_minus: object
    defect: object
    star: bool
    double_star: bool
    defect_bound: object
    rows: tuple[RowStat, ...]
    exact: bool = True
    tol: float | None = None

    @property
    def holds(self) -> bool:
        """Whether ``||I + T|| = 1 + ||T||`` (within tol in float mode)."""
        return geq(0, self.defect, self.tol)


def _row_terms(T: KernelOperator):
    """(d, r, rownorm) arrays; r and rownorm are Fractions in exact mode."""
    mods = abs_array(T.matrix)
    d = T.diagonal()
    if T.exact:
        rownorm = np.empty(T.n, dtype=object)
        r = np.empty(T.n, dtype=object)
        for s in range(T.n):
            rownorm[s] = exact_sum(mods[s])
            r[s] = rownorm[s] - mods[s, s]
        return d, r, rownorm
    rownorm = mods.sum(axis=1)
    r = rownorm - np.diagonal(mods)
    return d, r, rownorm


def _nips(d, r, lam, exact: bool):
    if exact:
        lam = to_exact(lam)
        lam_abs = rational_modulus(lam)
        values = (modulus(1 + lam * ds) + lam_abs * rs for ds, rs in zip(d, r))
        return smax(values)
    lam = to_float(lam)
    return float(np.max(np.abs(1 + lam * d) + abs(lam) * r))


def norm_id_plus_scaled(T: KernelOperator, lam=1):
    """``||I + lam*T||`` on the sup-normed function space.

    In exact mode ``lam`` must have rational modulus; the result is a Fraction
    or, for complex kernels, possibly a :class:`~daugavet.scalars.Surd`.
    """
    d, r, _ = _row_terms(T)
    return _nips(d, r, lam, T.exact)


def _require_real(T: KernelOperator):
    if T.is_complex:
        raise InputError("real kernel required; use complex_sweep_max for complex kernels")


def daugavet_report(T: KernelOperator) -> DaugavetReport:
    _require_real(T)
    d, r, rownorm = _row_terms(T)
    tol = T.tol
    if T.exact:
        opnorm = max(rownorm)
        zero = Fraction(0)
    else:
        opnorm = float(rownorm.max())
        zero = 0.0
    nip = _nips(d, r, 1, T.exact)
    nim = _nips(d, r, -1, T.exact)
    defect = 1 + opnorm - nip
    if not T.exact:
        # rounding can leave a tiny negative residue
        defect = max(defect, 0.0)
    rows = []
    for s in range(T.n):
        ds, rs, ns = d[s], r[s], rownorm[s]
        if not T.exact:
            ds, rs, ns = float(ds), float(rs), float(ns)
        rows.append(RowStat(s, ds, rs, ns, geq(ns, opnorm, tol)))
    star = all(geq(row.d, zero, tol) for row in rows)
    double_star = any(row.attains and geq(row.d, zero, tol) for row in rows)
    return DaugavetReport(
        opnorm=opnorm,
        norm_id_plus=nip,
        norm_id_minus=nim,
        defect=defect,
        star=star,
        double_star=double_star,
        defect_bound=_defect_bound(d, rownorm, opnorm, T.exact),
        rows=tuple(rows),
        exact=T.exact,
        tol=tol,
    )


def check_star(T: KernelOperator) -> bool:
    """Every self-atom is nonnegative (all singletons are open here)."""
    _require_real(T)
    zero = Fraction(0) if T.exact else 0.0
    return all(geq(x, zero, T.tol) for x in T.diagonal())


def check_double_star(T: KernelOperator) -> bool:
    """Some norm-attaining row has a nonnegative self-atom."""
    _require_real(T)
    d, _, rownorm = _row_terms(T)
    opnorm = max(rownorm)
    zero = Fraction(0) if T.exact else 0.0
    return any(
        geq(rownorm[s], opnorm, T.tol) and geq(d[s], zero, T.tol) for s in range(T.n)
    )


def _defect_bound(d, rownorm, opnorm, exact: bool):
    if exact:
        one, zero = Fraction(1), Fraction(0)
        return min(opnorm - rownorm[s] + 2 * min(one, max(zero, -d[s])) for s in range(len(d)))
    slack = opnorm - rownorm + 2 * np.minimum(1.0, np.maximum(0.0, -d))
    return max(float(slack.min()), 0.0)


def defect_upper_bound(T: KernelOperator):
    """``min_s (||T|| - ||mu_s|| + 2*min(1, max(0, -d_s)))``."""
    _require_real(T)
    d, _, rownorm = _row_terms(T)
    opnorm = max(rownorm) if T.exact else float(rownorm.max())
    return _defect_bound(d, rownorm, opnorm, T.exact)


def _unit_direction(z, exact: bool):
    # conj(z)/|z|, the unit scalar rotating z onto the positive axis
    if exact:
        z = to_exact(z)
        if isinstance(z, ComplexRational):
            return to_exact(z.conjugate() / rational_modulus(z))
        return Fraction(1) if z > 0 else Fraction(-1)
    z = complex(z)
    u = z.conjugate() / abs(z)
    return u.real if u.imag == 0 else u


def complex_sweep_max(T: KernelOperator):
    """Maximise ``||I + lam*T||`` over ``|lam| = 1``.

    Returns ``(lam_star, value)``.  The double maximum over ``lam`` and rows
    decouples, and row ``s`` alone is maximised at ``conj(d_s)/|d_s|``, so the
    candidates ``{conj(d_s)/|d_s| : d_s != 0} U {1}`` contain a maximiser.
    Ties keep the first candidate in row order, with ``1`` last.
    """
    d, r, _ = _row_terms(T)
    candidates = []
    for ds in d:
        if ds != 0:
            u = _unit_direction(ds, T.exact)
            if u not in candidates:
                candidates.append(u)
    one = Fraction(1) if T.exact else 1.0
    if one not in candidates:
        candidates.append(one)
    best_lam, best = None, None
    for lam in candidates:
        value = _nips(d, r, lam, T.exact)
        if best is None or value > best:
            best_lam, best = lam, value
    return best_lam, best


def grid_sweep_max(T: KernelOperator, angles: int = 4096):
    """Dense-grid oracle: ``max_k ||I + e^{2 pi i k/angles} T||`` computed from
    full row sums of ``|I + lam*T|`` in floating point."""
    a = np.array([[complex(x) for x in row] for row in T.matrix], dtype=complex)
    n = a.shape[0]
    eye = np.eye(n)
    best_lam, best = 1.0 + 0j, -math.inf
    chunk = max(1, 2**20 // (n * n))
    ks = np.arange(angles)
    for start in range(0, angles, chunk):
        lams = np.exp(2j * np.pi * ks[start : start + chunk] / angles)
        m = eye[None, :, :] + lams[:, None, None] * a[None, :, :]
        norms = np.abs(m).sum(axis=2).max(axis=1)
        k = int(np.argmax(norms))
        if norms[k] > best:
            best, best_lam = float(norms[k]), complex(lams[k])
    return best_lam, best


def _sign_blocks(n: int, chunk: int = 4096):
    # all sign vectors with f[0] = +1 (f and -f give the same norm)
    count = 1 << (n - 1)
    shifts = np.arange(n - 1, dtype=np.int64)
    for start in range(0, count, chunk):
        idx = np.arange(start, min(count, start + chunk), dtype=np.int64)
        f = np.ones((len(idx), n), dtype=np.int64)
        if n > 1:
            f[:, 1:] = 1 - 2 * ((idx[:, None] >> shifts) & 1)
        yield f


def brute_force_norm(A: KernelOperator):
    """``max_{f in {-1,+1}^n} ||A f||_inf`` by exhaustive enumeration."""
    if A.n > BRUTE_FORCE_MAX_N:
        raise SizeError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}, got n = {A.n}")
    _require_real(A)
    if not A.exact:
        best = 0.0
        for f in _sign_blocks(A.n):
            best = max(best, float(np.abs(A.matrix @ f.T.astype(float)).max()))
        return best
    scale = math.lcm(*(x.denominator for x in A.matrix.flat))
    ints = [[int(x * scale) for x in row] for row in A.matrix]
    biggest = max(abs(v) for row in ints for v in row)
    if biggest * A.n < 2**62:
        m = np.array(ints, dtype=np.int64)
    else:
        m = np.array(ints, dtype=object)
    best = 0
    for f in _sign_blocks(A.n):
        fm = f.T if m.dtype != object else f.T.astype(object)
        best = max(best, int(np.abs(m @ fm).max()))
    return Fraction(best, scale)


def brute_force_id_norm(T: KernelOperator, lam=1):
    """``||I + lam*T||`` via the sign-vector oracle."""
    return brute_force_norm(identity_plus(T, lam))
