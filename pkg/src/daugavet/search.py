"""Randomised and exhaustive property search over kernel classes.

Theorem predicates (``THEOREM_PREDICATES``) must never produce a finding; a
finding there is an implementation bug.  ``defect-zero`` is the plain
Daugavet equation, which fails on finite spaces (every point is isolated), so
it is expected to produce findings.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .daugavet import DaugavetReport, daugavet_report
from .models import KERNEL_CLASSES, random_kernel
from .operator import KernelOperator, kernel, with_scalar
from .rng import derive_seed
from .scalars import InputError, close, geq, is_zero, to_fraction

THEOREM_PREDICATES = (
    "prop1-identity",
    "lemma5-biconditional",
    "positive-defect-zero",
    "star-implies-defect-zero",
)
PREDICATES = THEOREM_PREDICATES + ("defect-zero",)
EXACT_ONLY = ("prop1-identity", "lemma5-biconditional")
SCAN_LIMIT = 10**7
# predicates are stated through the real report; complex kernels go through the sweep
SEARCH_CLASSES = tuple(k for k in KERNEL_CLASSES if "complex" not in k)


@dataclass(frozen=True)
class SearchConfig:
    kind: str
    n: int
    trials: int
    seed: int
    predicate: str
    scalar: str = "exact"
    magnitude: object = 1

    def __post_init__(self):
        if self.kind not in SEARCH_CLASSES:
            raise InputError(f"search class must be one of {', '.join(SEARCH_CLASSES)}, got {self.kind!r}")
        if self.trials < 1:
            raise InputError("trials must be >= 1")
        if self.predicate not in PREDICATES:
            raise InputError(f"unknown predicate {self.predicate!r}; choose from {', '.join(PREDICATES)}")
        if self.scalar not in ("exact", "float"):
            raise InputError(f"unknown scalar mode {self.scalar!r}")
        if self.predicate in EXACT_ONLY and self.scalar != "exact":
            raise InputError(f"predicate {self.predicate} requires exact mode")


@dataclass(frozen=True)
class Finding:
    trial: int
    kernel: KernelOperator
    report: DaugavetReport
    predicate: str


def _prop1(T, rep):
    return close(max(rep.norm_id_plus, rep.norm_id_minus), 1 + rep.opnorm, rep.tol)


def _is_positive(T):
    zero = Fraction(0) if T.exact else 0.0
    return all(geq(x, zero, None) for x in T.matrix.flat)


def holds(predicate: str, T: KernelOperator, rep: DaugavetReport) -> bool:
    zero_defect = is_zero(rep.defect, rep.tol)
    match predicate:
        case "prop1-identity":
            return _prop1(T, rep)
        case "lemma5-biconditional":
            return zero_defect == rep.double_star
        case "positive-defect-zero":
            return zero_defect or not _is_positive(T)
        case "star-implies-defect-zero":
            return zero_defect or not rep.star
        case "defect-zero":
            return zero_defect
    raise InputError(f"unknown predicate {predicate!r}")


def trial_kernel(config: SearchConfig, trial: int) -> KernelOperator:
    T = random_kernel(config.kind, config.n, derive_seed(config.seed, trial), config.magnitude)
    return with_scalar(T, config.scalar)


def search_counterexamples(config: SearchConfig) -> list[Finding]:
    findings = []
    for trial in range(config.trials):
        T = trial_kernel(config, trial)
        rep = daugavet_report(T)
        if not holds(config.predicate, T, rep):
            findings.append(Finding(trial, T, rep, config.predicate))
    return findings


@dataclass(frozen=True)
class ScanSummary:
    total: int
    defect_zero: int
    star: int
    double_star: int
    violations: int


def exhaustive_kernels(entries, n: int):
    """Every n x n exact matrix with entries drawn from ``entries``."""
    values = [to_fraction(e) for e in entries]
    if not values or n < 1:
        raise InputError("need a nonempty entry set and n >= 1")
    if len(values) ** (n * n) > SCAN_LIMIT:
        raise InputError(f"{len(values)}^{n * n} matrices exceeds the scan limit {SCAN_LIMIT}")
    for combo in itertools.product(values, repeat=n * n):
        yield kernel([combo[i * n : (i + 1) * n] for i in range(n)], "exact")


def exhaustive_scan(entries, n: int) -> ScanSummary:
    """Scan :func:`exhaustive_kernels`, cross-checking
    ``max(||I+T||, ||I-T||) = 1 + ||T||`` and ``defect == 0 <=> double_star``."""
    total = defect_zero = star = double_star = violations = 0
    for T in exhaustive_kernels(entries, n):
        rep = daugavet_report(T)
        total += 1
        defect_zero += rep.defect == 0
        star += rep.star
        double_star += rep.double_star
        if not (_prop1(T, rep) and (rep.defect == 0) == rep.double_star):
            violations += 1
    return ScanSummary(total, defect_zero, star, double_star, violations)


def replay(finding: Finding) -> DaugavetReport:
    """Recompute a finding's report from its stored kernel."""
    return daugavet_report(finding.kernel)
