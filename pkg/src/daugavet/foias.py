"""Executable escalation for kernels with a patch of negative self-atoms.

Given a kernel oracle ``atom(s, t)`` on [0, 1] and ``beta > 0``:

1. Find a patch U of grid points with ``atom(s, s) < -2*beta``.
2. Pick ``s_0`` in U, then repeatedly shrink
   ``U_{m+1} = {s in U_m : |atom(s, s_m) - atom(s_m, s_m)| < beta}``
   and pick an unused ``s_{m+1}`` in it.  Every later point lies in all
   earlier ``U_j``, so ``atom(s_m, s_j) < -beta`` for every ``j < m`` and
   ``||mu_{s_m}|| >= m*beta``.
3. Stop when that certified mass exceeds the claimed bound B.

Open sets are realised as grid points satisfying the strict inequalities.
Level L uses the ``3**L`` midpoint grid; those grids are nested, so chosen
points stay grid points after refinement.  When no candidate remains the grid
is refined up to ``max_level``.  A stall is the honest finite verdict where
the continuum argument concludes non-existence.

In ``norm`` mode the shrink step uses ``||mu_s - mu_{s_m}|| < beta`` over the
current grid instead.  That condition implies the atom condition, so chains
from either mode verify the same way.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .expression import evaluate
from .models import Atomic, C0Factored, Density, DensityMeasure, KernelSpec, RankOne, SumSpec
from .scalars import InputError, to_fraction

EMPTY_REFINEMENT = "empty-refinement-set"
RESOLUTION_EXHAUSTED = "resolution-exhausted"


@dataclass(frozen=True)
class KernelOracle:
    atom: Callable[[Fraction, Fraction], object]
    bound: object
    max_level: int = 6
    name: str = "oracle"

    def __post_init__(self):
        if self.max_level < 1:
            raise InputError("max_level must be >= 1")
        if self.bound < 0:
            raise InputError("claimed bound must be >= 0")


@dataclass(frozen=True)
class WitnessChain:
    beta: object
    patch: tuple  # (lo, hi): the half-open interval [lo, hi)
    points: tuple = ()
    sets: tuple = ()  # sets[m-1] = grid points of U_m, for m = 1..k
    certified_mass: object = 0
    mode: str = field(default="atom", compare=False)

    @property
    def k(self) -> int:
        return max(len(self.points) - 1, 0)


@dataclass(frozen=True)
class BoundViolated:
    chain: WitnessChain


@dataclass(frozen=True)
class Stalled:
    step: int
    reason: str
    chain: WitnessChain = field(default=None)


@dataclass(frozen=True)
class NoNegativePatch:
    max_level: int


EscalationOutcome = BoundViolated | Stalled | NoNegativePatch


def grid(level: int) -> list[Fraction]:
    n = 3**level
    return [Fraction(2 * i + 1, 2 * n) for i in range(n)]


def _mass(oracle: KernelOracle, points) -> object:
    if not points:
        return Fraction(0)
    last = points[-1]
    return sum((abs(oracle.atom(last, s)) for s in points[:-1]), Fraction(0))


def _find_patch(oracle: KernelOracle, beta):
    for level in range(1, oracle.max_level + 1):
        pts = grid(level)
        neg = [oracle.atom(p, p) < -2 * beta for p in pts]
        if any(neg):
            i = neg.index(True)
            j = i
            while j + 1 < len(pts) and neg[j + 1]:
                j += 1
            n = 3**level
            return level, (Fraction(i, n), Fraction(j + 1, n))
    return None, None


def _in_patch(oracle, beta, patch, s) -> bool:
    lo, hi = patch
    return lo <= s < hi and oracle.atom(s, s) < -2 * beta


def _row_distance(oracle, s, u, level):
    return sum((abs(oracle.atom(s, t) - oracle.atom(u, t)) for t in grid(level)), Fraction(0))


def _members(oracle, beta, patch, chain, level, mode):
    out = []
    for s in grid(level):
        if not _in_patch(oracle, beta, patch, s):
            continue
        if mode == "atom":
            ok = all(abs(oracle.atom(s, u) - oracle.atom(u, u)) < beta for u in chain)
        else:
            ok = all(_row_distance(oracle, s, u, level) < beta for u in chain)
        if ok:
            out.append(s)
    return out


def escalate(oracle: KernelOracle, beta, mode: str = "atom") -> EscalationOutcome:
    if mode not in ("atom", "norm"):
        raise InputError(f"mode must be 'atom' or 'norm', got {mode!r}")
    beta = to_fraction(beta) if not isinstance(beta, float) else beta
    if beta <= 0:
        raise InputError("beta must be > 0")
    level, patch = _find_patch(oracle, beta)
    if patch is None:
        return NoNegativePatch(oracle.max_level)
    points = [min(s for s in grid(level) if _in_patch(oracle, beta, patch, s))]
    sets = []
    while True:
        mass = _mass(oracle, points)
        chain = WitnessChain(beta, patch, tuple(points), tuple(sets), mass, mode)
        if mass > oracle.bound:
            return BoundViolated(chain)
        while True:
            members = _members(oracle, beta, patch, points, level, mode)
            used = set(points)
            candidates = [s for s in members if s not in used]
            if candidates:
                break
            if level == oracle.max_level:
                free = [s for s in grid(level) if _in_patch(oracle, beta, patch, s) and s not in used]
                reason = EMPTY_REFINEMENT if free else RESOLUTION_EXHAUSTED
                return Stalled(len(points), reason, chain)
            level += 1
        points.append(min(candidates))
        sets.append(tuple(members))


def verify_chain(oracle: KernelOracle, chain: WitnessChain) -> bool:
    """Re-check every chain invariant with fresh oracle queries."""
    pts = chain.points
    if not pts:
        return chain.certified_mass == 0
    beta = chain.beta
    if len(set(pts)) != len(pts):
        return False
    if any(not _in_patch(oracle, beta, chain.patch, s) for s in pts):
        return False
    if len(chain.sets) != len(pts) - 1:
        return False
    for m in range(1, len(pts)):
        if pts[m] not in chain.sets[m - 1]:
            return False
        for j in range(m):
            if not abs(oracle.atom(pts[m], pts[j]) - oracle.atom(pts[j], pts[j])) < beta:
                return False
    mass = _mass(oracle, pts)
    if mass != chain.certified_mass:
        return False
    return mass >= (len(pts) - 1) * beta


def progress_limit(bound, beta) -> int:
    """Most points a BoundViolated chain can need.

    k points past s_0 certify at least k*beta, and the bound must be strictly
    exceeded, so k = floor(B/beta) + 1 always suffices.  This equals
    ceil(B/beta) + 1 unless B/beta is an integer.
    """
    return math.floor(Fraction(bound) / Fraction(beta)) + 2


# --------------------------------------------------------------------------
# oracles


def _const_neg_quarter(s, t):
    return Fraction(-1, 4)


def _diag_neg_quarter(s, t):
    return Fraction(-1, 4) if s == t else Fraction(0)


def _nonneg_quarter(s, t):
    return Fraction(1, 4)


MOCKS = {
    "const-neg-quarter": _const_neg_quarter,
    "diag-neg-quarter": _diag_neg_quarter,
    "nonneg-quarter": _nonneg_quarter,
}


def mock_oracle(name: str, bound, max_level: int = 6) -> KernelOracle:
    if name not in MOCKS:
        raise InputError(f"unknown mock {name!r}; choose from {', '.join(MOCKS)}")
    return KernelOracle(MOCKS[name], to_fraction(bound), max_level, name)


def _spec_atom(spec: KernelSpec, s, t, cell_mass: Fraction):
    # exact rational evaluation where possible, float otherwise
    def ev(expr, **kw):
        try:
            return evaluate(expr, exact=True, **kw)
        except InputError:
            return float(evaluate(expr, s=float(kw.get("s", 0)), t=float(kw.get("t", 0))))

    def meas_atom(m, t):
        if isinstance(m, DensityMeasure):
            return ev(m.expr, t=t) * cell_mass
        return sum((w for loc, w in m.atoms if loc == t), Fraction(0))

    match spec:
        case Density(expr):
            return ev(expr, s=s, t=t) * cell_mass
        case RankOne(shape, meas):
            return ev(shape, s=s) * meas_atom(meas, t)
        case C0Factored(terms):
            return sum((ev(c, s=s) * meas_atom(m, t) for c, m in terms), Fraction(0))
        case Atomic(points):
            return sum((ev(w, s=s) for loc, w in points if loc == t), Fraction(0))
        case SumSpec(parts):
            return sum((_spec_atom(p, s, t, cell_mass) for p in parts), Fraction(0))
    raise TypeError(f"not a kernel spec: {spec!r}")


def oracle_from_spec(spec: KernelSpec, bound, max_level: int = 6) -> KernelOracle:
    """Oracle whose atoms are the spec's exact atoms plus density cell masses
    at the finest grid (``3**max_level`` cells)."""
    cell_mass = Fraction(1, 3**max_level)
    return KernelOracle(lambda s, t: _spec_atom(spec, s, t, cell_mass), to_fraction(bound), max_level, "spec")
