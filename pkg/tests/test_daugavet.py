"""Norm formulas checked against the sign-vector and dense-angle oracles."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from daugavet.daugavet import (
    SizeError,
    brute_force_norm,
    check_double_star,
    check_star,
    complex_sweep_max,
    daugavet_report,
    defect_upper_bound,
    grid_sweep_max,
    norm_id_plus_scaled,
)
from daugavet.models import random_kernel
from daugavet.operator import identity, identity_plus, kernel, sup_operator_norm, zero_operator
from daugavet.scalars import ComplexRational

from conftest import float_kernels, rational_kernels

i = ComplexRational(0, 1)
A = kernel([["1/2", "-1/2"], ["3/10", "1/5"]])
B = kernel([["-1/2", "1/2"], ["1/5", "1/5"]])


def test_norm_id_plus_scaled_examples():
    assert norm_id_plus_scaled(zero_operator(3), 1) == 1
    assert norm_id_plus_scaled(B, 1) == Fraction(7, 5)
    assert norm_id_plus_scaled(B, -1) == 2
    assert norm_id_plus_scaled(kernel([[i]]), -i) == 2


def test_report_minus_identity():
    rep = daugavet_report(kernel([[-1, 0], [0, -1]]))
    assert (rep.opnorm, rep.norm_id_plus, rep.defect) == (1, 0, 2)
    assert not rep.star and not rep.double_star
    assert rep.defect_bound == 2


def test_report_examples():
    rep = daugavet_report(A)
    assert (rep.opnorm, rep.norm_id_plus, rep.defect, rep.star) == (1, 2, 0, True)
    rep = daugavet_report(B)
    assert rep.defect == Fraction(3, 5)
    assert not rep.star and not rep.double_star
    assert rep.defect_bound == Fraction(3, 5)


def test_star_double_star_examples():
    assert check_star(kernel([["1/2", 0], [0, "1/5"]]))
    C = kernel([["-1/2", "1/2"], ["1/5", "4/5"]])
    assert not check_star(C)
    assert check_double_star(C)
    assert daugavet_report(C).defect == 0
    M = kernel([[-1, 0], [0, -1]])
    assert not check_star(M) and not check_double_star(M)


def test_defect_upper_bound_examples():
    assert defect_upper_bound(kernel([[-1, 0], [0, -1]])) == 2
    assert defect_upper_bound(B) == Fraction(3, 5)
    P = random_kernel("positive", 4, 11)
    assert defect_upper_bound(P) >= 0 and daugavet_report(P).defect == pytest.approx(0, abs=1e-9)


def test_complex_sweep_examples():
    assert complex_sweep_max(kernel([[i]])) == (-i, 2)
    assert complex_sweep_max(kernel([[-1]])) == (-1, 2)
    assert norm_id_plus_scaled(kernel([[-1]]), 1) == 0
    lam, value = complex_sweep_max(kernel([[ComplexRational("3/10", "2/5")]]))
    assert lam == ComplexRational("3/10", "-2/5") / Fraction(1, 2)
    assert value == Fraction(3, 2)
    _, grid_value = grid_sweep_max(kernel([[ComplexRational("3/10", "2/5")]]))
    assert abs(grid_value - 1.5) < 1e-3


def test_brute_force_examples():
    assert brute_force_norm(kernel([[1, 1], [0, 0]])) == 2
    assert brute_force_norm(identity_plus(A, 1)) == 2
    with pytest.raises(SizeError):
        brute_force_norm(identity(21))


def test_brute_force_matches_formula_on_random_kernels():
    for seed in range(500):
        T = random_kernel("rational-signed", 1 + seed % 10, seed)
        assert brute_force_norm(T) == sup_operator_norm(T)


@given(st.fractions(-5, 5, max_denominator=30), st.fractions(0, 5, max_denominator=30))
def test_per_row_identity(d, r):
    assert max(abs(1 + d), abs(1 - d)) + r == 1 + abs(d) + r


@given(rational_kernels(max_n=6))
def test_global_identity_and_criteria(T):
    rep = daugavet_report(T)
    assert max(rep.norm_id_plus, rep.norm_id_minus) == 1 + rep.opnorm
    assert rep.defect >= 0
    assert (rep.defect == 0) == rep.double_star
    assert (rep.defect == 0) == check_double_star(T)
    assert rep.star == check_star(T)
    if rep.star:
        assert rep.double_star
    assert rep.defect <= rep.defect_bound
    assert all(row.rownorm == abs(row.d) + row.r for row in rep.rows)


@given(rational_kernels(max_n=5))
def test_formula_matches_oracle_on_identity_shifts(T):
    assert norm_id_plus_scaled(T, 1) == brute_force_norm(identity_plus(T, 1))
    assert norm_id_plus_scaled(T, -1) == brute_force_norm(identity_plus(T, -1))


@given(float_kernels())
def test_float_formula_matches_oracle(T):
    assert norm_id_plus_scaled(T, 1) == pytest.approx(brute_force_norm(identity_plus(T, 1)), abs=1e-9)


def test_nonnegative_kernels_are_star():
    for seed in range(200):
        T = random_kernel("positive", 1 + seed % 6, seed)
        assert check_star(T)
        assert daugavet_report(T).holds


def test_defect_bound_never_violated():
    for seed in range(10_000):
        T = random_kernel("rational-signed", 1 + seed % 5, seed)
        rep = daugavet_report(T)
        assert rep.defect <= rep.defect_bound
    assert defect_upper_bound(kernel([[-1, 0], [0, -1]])) == 2


@given(rational_kernels(max_n=4))
def test_real_sweep_uses_plus_or_minus_one(T):
    lam, value = complex_sweep_max(T)
    assert lam in (1, -1)
    assert value == max(norm_id_plus_scaled(T, 1), norm_id_plus_scaled(T, -1))


def test_complex_sweep_on_random_complex_kernels():
    for seed in range(50):
        T = random_kernel("rational-complex", 1 + seed % 4, seed)
        lam, value = complex_sweep_max(T)
        assert value == 1 + sup_operator_norm(T)
        assert abs(float(grid_sweep_max(T)[1]) - float(value)) < 1e-3


def test_float_complex_sweep():
    T = random_kernel("complex", 3, 5)
    lam, value = complex_sweep_max(T)
    assert abs(abs(lam) - 1) < 1e-12
    assert value == pytest.approx(1 + sup_operator_norm(T), abs=1e-12)
