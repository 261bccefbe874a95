"""Acceptance gate: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -s`` or ``python tests/test_acceptance.py``.
"""
import json
import sys
import time
from fractions import Fraction

import numpy as np
import pytest

from daugavet.cli import main
from daugavet.daugavet import (
    brute_force_norm,
    check_double_star,
    complex_sweep_max,
    daugavet_report,
    grid_sweep_max,
    norm_id_plus_scaled,
)
from daugavet.foias import (
    EMPTY_REFINEMENT,
    BoundViolated,
    Stalled,
    escalate,
    mock_oracle,
    verify_chain,
)
from daugavet.models import cos_kernel, discretize, neg_dirac_half, random_kernel, three_atom_factored
from daugavet.operator import identity_plus, sup_operator_norm, transpose
from daugavet.search import exhaustive_kernels

SEED = 20240601
RESULTS = {}  # criterion -> line; printed in the terminal summary by conftest


def _line(number, ok, detail):
    text = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS[number] = text
    assert ok, text


def _sizes(count, max_n):
    return [(i % max_n) + 1 for i in range(count)]


def _rational_kernels(count, max_n, offset=0):
    return [random_kernel("rational-signed", n, SEED + offset + i) for i, n in enumerate(_sizes(count, max_n))]


def test_1_both_signs_identity():
    start = time.perf_counter()
    bad = 0
    for T in _rational_kernels(1000, 6):
        rep = daugavet_report(T)
        bad += max(rep.norm_id_plus, rep.norm_id_minus) != 1 + rep.opnorm
    elapsed = time.perf_counter() - start
    _line(1, bad == 0 and elapsed < 5, f"max(||I+T||,||I-T||) = 1+||T|| on 1000 exact kernels, {bad} exceptions, {elapsed:.2f}s")


def _criterion2_kernels():
    return list(exhaustive_kernels([-1, 0, 1], 2)) + _rational_kernels(1000, 6, offset=10_000)


def test_2_finite_criterion_biconditional():
    kernels = _criterion2_kernels()
    bad = sum((daugavet_report(T).defect == 0) != check_double_star(T) for T in kernels)
    _line(2, bad == 0, f"defect = 0 <=> (**) on {len(kernels)} exact kernels, {bad} exceptions")


def test_3_oracle_equivalence():
    start = time.perf_counter()
    kernels = _criterion2_kernels()
    kernels += [random_kernel("rational-signed", n, SEED + 20_000 + i) for i, n in enumerate(_sizes(500, 10))]
    bad = 0
    for T in kernels:
        bad += sup_operator_norm(T) != brute_force_norm(T)
        for lam in (1, -1):
            bad += norm_id_plus_scaled(T, lam) != brute_force_norm(identity_plus(T, lam))
    elapsed = time.perf_counter() - start
    _line(3, bad == 0 and elapsed < 60, f"formula = sign-vector oracle on {len(kernels)} kernels, {bad} mismatches, {elapsed:.1f}s")


def test_4_positive_kernels():
    worst = 0.0
    bad = 0
    for i, n in enumerate(_sizes(10_000, 8)):
        rep = daugavet_report(random_kernel("positive", n, SEED + 30_000 + i))
        worst = max(worst, rep.defect)
        bad += not rep.holds
    _line(4, bad == 0, f"10^4 positive float kernels, {bad} with defect > 1e-9, worst {worst:.1e}")


def test_5_complex_sweep():
    bad_exact = 0
    worst_grid = 0.0
    for i, n in enumerate(_sizes(200, 5)):
        T = random_kernel("rational-complex", n, SEED + 40_000 + i)
        _, value = complex_sweep_max(T)
        target = 1 + sup_operator_norm(T)
        bad_exact += value != target
        worst_grid = max(worst_grid, abs(grid_sweep_max(T, 4096)[1] - float(target)))
    ok = bad_exact == 0 and worst_grid <= 1e-3
    _line(5, ok, f"sweep = 1+||T|| exactly on 200 complex kernels ({bad_exact} misses), grid gap {worst_grid:.1e}")


def test_6_cos_kernel_refinement():
    parts = []
    ok = True
    for n in (16, 64, 256, 1024):
        start = time.perf_counter()
        rep = daugavet_report(discretize(cos_kernel(), n))
        elapsed = time.perf_counter() - start
        ok &= rep.defect <= 2 / n
        if n == 1024:
            ok &= elapsed < 10
        parts.append(f"n={n} defect {rep.defect:.1e}")
    _line(6, ok, f"cos(pi*(s+t)) defect <= 2/n; {', '.join(parts)}; n=1024 in {elapsed:.2f}s")


def test_7_factored_presets():
    defects = {}
    for name, spec in (("-delta_1/2", neg_dirac_half()), ("three-atom", three_atom_factored())):
        defects[name] = [daugavet_report(discretize(spec, n)).defect for n in (3, 9, 27, 81)]
    ok = all(d == 0 and isinstance(d, Fraction) for ds in defects.values() for d in ds)
    shown = "; ".join(f"{k}: {[str(d) for d in v]}" for k, v in defects.items())
    _line(7, ok, f"exact defects at n=3,9,27,81 {shown}")


def test_8_transpose_duality():
    bad = 0
    for T in _rational_kernels(500, 6, offset=50_000):
        Tt = transpose(T)
        rep = daugavet_report(Tt)
        bad += max(rep.norm_id_plus, rep.norm_id_minus) != 1 + rep.opnorm
        col_norm = max(sum(abs(x) for x in T.matrix[:, j]) for j in range(T.n))
        bad += col_norm != sup_operator_norm(Tt)
    _line(8, bad == 0, f"transpose identity and column-sum norm on 500 kernels, {bad} exceptions")


def test_9_escalation():
    oracle = mock_oracle("const-neg-quarter", 1)
    out = escalate(oracle, Fraction(1, 10))
    ok = (
        isinstance(out, BoundViolated)
        and len(out.chain.points) == 6
        and out.chain.certified_mass == Fraction(5, 4)
        and verify_chain(oracle, out.chain)
    )
    stall = escalate(mock_oracle("diag-neg-quarter", 1), Fraction(1, 10))
    ok = ok and isinstance(stall, Stalled) and stall.step == 1 and stall.reason == EMPTY_REFINEMENT
    _line(9, ok, (
        f"constant mock -> {type(out).__name__}, {len(out.chain.points)} points, mass {out.chain.certified_mass}; "
        f"diagonal mock -> {type(stall).__name__} at step {getattr(stall, 'step', '-')} ({getattr(stall, 'reason', '-')})"
    ))


def test_10_minus_identity(tmp_path, capsys):
    path = tmp_path / "minus_identity.json"
    path.write_text(json.dumps({"scalar": "exact", "matrix": [[-1, 0], [0, -1]]}))
    code = main(["check", "--input", str(path)])
    report = json.loads(capsys.readouterr().out)["report"]
    ok = code == 1 and report["defect"] == "2"
    _line(10, ok, f"check on -I reports defect {report['defect']} and exits {code}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s", "-p", "no:cacheprovider"]))
