"""Кратности в Ind_Γ^G 1 и контрольные суммы разложения."""
import pytest

from gl3trace.exceptions import UnknownCondition, UnsupportedRegime
from gl3trace.services.gl3_service import group_order
from gl3trace.services.multiplicity_service import (
    FAMILIES,
    check_regime,
    decompose,
    dual_square_sum,
    multiplicity,
    spectral_checksums,
)


@pytest.mark.parametrize("n", [2, 3, 4, 6])
def test_unsupported_regime(n):
    with pytest.raises(UnsupportedRegime):
        check_regime(n)
    with pytest.raises(UnsupportedRegime):
        multiplicity("pi_alpha", "trivial", 2, n)


def test_unknown_case():
    with pytest.raises(UnknownCondition):
        multiplicity("pi_alpha", "a2b_trivial", 2, 5)
    with pytest.raises(UnknownCondition):
        multiplicity("omega", "trivial", 2, 5)


def test_known_values():
    assert multiplicity("pi_alpha", "cube_trivial", 7, 5) == 50
    assert multiplicity("pi_alpha", "cube_trivial", 2, 5) == 5
    assert multiplicity("alpha", "trivial", 2, 5) == 1
    assert multiplicity("alpha", "cube_trivial", 2, 5) == 0


def test_nontrivial_restriction_gives_zero():
    for family in FAMILIES.values():
        assert multiplicity(family.name, family.cases[0], 3, 5) == 0


@pytest.mark.parametrize("p, n", [
    (2, 1), (7, 1), (13, 1), (2, 5), (3, 5), (5, 5), (7, 5), (2, 7),
    pytest.param(13, 5, marks=pytest.mark.slow),
    pytest.param(31, 5, marks=pytest.mark.slow),
    pytest.param(7, 7, marks=pytest.mark.slow),
])
def test_multiplicities_are_integral(p, n):
    report = decompose(p, n)
    assert report.failures == []
    assert len(report.rows) == sum(len(family.cases) for family in FAMILIES.values())


def test_n1_is_trivial_representation():
    report = decompose(7, 1)
    nonzero = [(row.family, row.case) for row in report.rows if row.count and row.value]
    assert nonzero == [("alpha", "trivial")]


def test_checksums_q32():
    checksums = spectral_checksums(2, 5)
    assert checksums.index == 202681757696
    assert checksums.checks["dimension"] is True
    assert checksums.checks["dual"] is True
    assert checksums.checks["double_cosets"] is None


def test_checksums_outside_regime(f4):
    assert dual_square_sum(2, 4) == 181440
    checksums = spectral_checksums(2, 2, f4)
    assert checksums.dimension_sum is None
    assert checksums.double_cosets == 24
    assert checksums.checks == {"dimension": None, "dual": True, "double_cosets": None}


def test_checksums_n1(f7):
    checksums = spectral_checksums(7, 1, f7)
    assert checksums.checks == {"dimension": True, "dual": True, "double_cosets": True}
    assert checksums.square_sum == 1


def test_dimension_sum_is_index_q7_5():
    checksums = spectral_checksums(7, 5)
    assert checksums.index == group_order(7 ** 5) // group_order(7)
    assert checksums.dimension_sum == checksums.index
    assert checksums.checks["dimension"] is True


def test_dual_square_sum_q13():
    assert dual_square_sum(13, 13) == group_order(13)
    assert spectral_checksums(13, 1).checks["dual"] is True
