import pytest
from hypothesis import given, settings, strategies as st

from daugavet.asymptotic import dual_study, refinement_study
from daugavet.daugavet import daugavet_report
from daugavet.models import AtomList, Density, DensityMeasure, RankOne, cos_kernel, discretize, neg_dirac_half
from daugavet.operator import transpose
from daugavet.scalars import InputError


def test_cos_kernel_defect_within_bound():
    study = refinement_study(cos_kernel(), [16, 64, 256])
    for r in study.results:
        assert r.defect <= 2 / r.level
        assert r.max_abs_diag <= 1 / r.level + 1e-15
    assert [r.level for r in study.results] == [16, 64, 256]


def test_constant_density_has_zero_defect():
    study = refinement_study(Density("1"), [2, 4, 8])
    assert all(r.defect == 0 for r in study.results)
    assert all(r.opnorm == 1 for r in study.results)


def test_neg_dirac_half_is_exact_zero():
    study = refinement_study(neg_dirac_half(), [3, 9, 27])
    assert [r.defect for r in study.results] == [0, 0, 0]
    assert all(r.max_abs_diag == 1 for r in study.results)
    assert study.exponent is None or study.results[0].defect_bound == 0


def test_exponent_for_signed_density():
    study = refinement_study(Density("s - t - 0.5"), [4, 8, 16, 32, 64])
    assert all(r.defect <= 2 * r.max_abs_diag for r in study.results)
    if study.exponent is not None:
        assert study.exponent < 0


@pytest.mark.parametrize(
    "spec",
    [cos_kernel(), Density("s*t + 1"), RankOne("s", DensityMeasure("t - 0.5"))],
)
def test_dual_study_matches_transpose(spec):
    levels = [4, 8, 16]
    dual = dual_study(spec, levels)
    for n, r in zip(levels, dual.results):
        rep = daugavet_report(transpose(discretize(spec, n)))
        assert r.defect == rep.defect and r.opnorm == rep.opnorm
    assert dual.dual


def test_symmetric_kernel_dual_agrees():
    primal = refinement_study(cos_kernel(), [8, 32])
    dual = dual_study(cos_kernel(), [8, 32])
    for a, b in zip(primal.results, dual.results):
        assert a.opnorm == pytest.approx(b.opnorm, abs=1e-12)


def test_rank_one_atom_dual():
    spec = RankOne("1", AtomList(((0.5, -1),)))
    # transposed, the 1/2 row carries the whole column of -1's and its own
    # self-atom is -1, so that single norming row fails
    study = dual_study(spec, [3, 9])
    assert [r.defect for r in study.results] == [2, 2]
    assert [r.opnorm for r in study.results] == [3, 9]


def test_deterministic():
    a = refinement_study(cos_kernel(), [8, 16]).csv_rows()
    b = refinement_study(cos_kernel(), [8, 16]).csv_rows()
    assert a == b


@pytest.mark.parametrize("levels", [[], [1, 4], [8, 4], [4, 4]])
def test_level_validation(levels):
    with pytest.raises(InputError):
        refinement_study(cos_kernel(), levels)


@settings(max_examples=30)
@given(st.lists(st.integers(2, 40), min_size=1, max_size=4, unique=True).map(sorted))
def test_density_bound_holds_on_any_levels(levels):
    study = refinement_study(Density("sin(7*s*t) - 0.3"), levels)
    for r in study.results:
        assert r.defect <= 2 * r.max_abs_diag + 1e-12
        assert r.defect <= r.defect_bound + 1e-12
