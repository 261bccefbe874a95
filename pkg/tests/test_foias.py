from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from daugavet.foias import (
    EMPTY_REFINEMENT,
    RESOLUTION_EXHAUSTED,
    BoundViolated,
    KernelOracle,
    NoNegativePatch,
    Stalled,
    WitnessChain,
    escalate,
    grid,
    mock_oracle,
    oracle_from_spec,
    progress_limit,
    verify_chain,
)
from daugavet.models import Density, neg_dirac_half
from daugavet.scalars import InputError

F = Fraction


def test_constant_mock_violates_bound():
    oracle = mock_oracle("const-neg-quarter", 1)
    out = escalate(oracle, F(1, 10))
    assert isinstance(out, BoundViolated)
    chain = out.chain
    assert len(chain.points) == 6
    assert chain.certified_mass == F(5, 4)
    assert chain.points[:3] == (F(1, 6), F(1, 2), F(5, 6))
    assert verify_chain(oracle, chain)


def test_diagonal_mock_stalls():
    out = escalate(mock_oracle("diag-neg-quarter", 1), F(1, 10))
    assert isinstance(out, Stalled)
    assert out.step == 1
    assert out.reason == EMPTY_REFINEMENT


def test_nonnegative_mock_has_no_patch():
    assert escalate(mock_oracle("nonneg-quarter", 1), F(1, 10)) == NoNegativePatch(6)


def test_tampered_chain_fails_verification():
    oracle = mock_oracle("const-neg-quarter", 1)
    chain = escalate(oracle, F(1, 10)).chain
    bad_point = chain.points[:-1] + (F(1, 2) + F(1, 1000),)
    assert not verify_chain(oracle, replace(chain, points=bad_point))
    assert not verify_chain(oracle, replace(chain, certified_mass=F(2)))
    assert not verify_chain(oracle, replace(chain, points=chain.points[:2] + chain.points[1:2] + chain.points[3:]))
    diag = mock_oracle("diag-neg-quarter", 1)
    assert not verify_chain(diag, chain)


def test_empty_chain():
    oracle = mock_oracle("const-neg-quarter", 1)
    assert verify_chain(oracle, WitnessChain(F(1, 10), (F(0), F(1))))
    assert not verify_chain(oracle, WitnessChain(F(1, 10), (F(0), F(1)), certified_mass=F(1)))


def test_resolution_exhausted():
    # only 3 grid points exist at level 1; a huge bound runs out of points
    out = escalate(mock_oracle("const-neg-quarter", 100, max_level=1), F(1, 10))
    assert isinstance(out, Stalled)
    assert out.reason == RESOLUTION_EXHAUSTED
    assert out.step == 3
    assert out.chain.certified_mass == F(1, 2)


@settings(max_examples=40)
@given(
    st.fractions(F(1, 20), F(1, 8)),
    st.fractions(F(0), F(2)),
)
def test_progress_bound(beta, bound):
    oracle = mock_oracle("const-neg-quarter", bound)
    out = escalate(oracle, beta)
    assert isinstance(out, BoundViolated)
    assert len(out.chain.points) <= progress_limit(bound, beta)
    assert out.chain.certified_mass >= out.chain.k * beta
    assert verify_chain(oracle, out.chain)


def test_deterministic():
    oracle = mock_oracle("const-neg-quarter", F(3, 2))
    assert escalate(oracle, F(1, 10)) == escalate(oracle, F(1, 10))


@pytest.mark.parametrize("name", ["const-neg-quarter", "diag-neg-quarter", "nonneg-quarter"])
def test_modes_agree_on_row_constant_oracles(name):
    oracle = mock_oracle(name, 1, max_level=3)
    a = escalate(oracle, F(1, 10), mode="atom")
    b = escalate(oracle, F(1, 10), mode="norm")
    assert type(a) is type(b)
    if isinstance(a, BoundViolated):
        assert a.chain == b.chain
        assert verify_chain(oracle, b.chain)


def test_input_validation():
    oracle = mock_oracle("const-neg-quarter", 1)
    with pytest.raises(InputError):
        escalate(oracle, 0)
    with pytest.raises(InputError):
        escalate(oracle, F(1, 10), mode="gradient")
    with pytest.raises(InputError):
        mock_oracle("nope", 1)
    with pytest.raises(InputError):
        KernelOracle(lambda s, t: 0, -1)


def test_grids_are_nested():
    for level in range(1, 5):
        assert set(grid(level)) <= set(grid(level + 1))


def test_spec_oracles():
    # a single negative atom sits on the diagonal at one point only: no open patch
    out = escalate(oracle_from_spec(neg_dirac_half(), 1, max_level=3), F(1, 10))
    assert isinstance(out, Stalled)
    assert out.chain.points == (F(1, 2),)
    # a negative density has tiny cell atoms, so there is no patch at all
    dens = oracle_from_spec(Density("-1"), 1, max_level=3)
    assert escalate(dens, F(1, 10)) == NoNegativePatch(3)
