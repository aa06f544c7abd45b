"""Характер ρ = Ind_Γ^G 1 и примеры формулы следа."""
from fractions import Fraction

import pytest

from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.services.gl3_service import IDENTITY, canonical_rep, group_order
from gl3trace.services.ledger_service import get_discrepancies
from gl3trace.services.spectral_service import (
    SUBGROUP_K,
    character_orthogonality,
    character_table,
    chi_rho,
    class_size_constants,
    example_constant_function,
    example_identities,
    example_k_indicator,
    induced_char_oracle,
    k_indicator_printed,
)


def test_class_size_constants_q2():
    c = class_size_constants(2)
    assert (c.P1, c.P2, c.E1, c.E2) == (21, 42, 56, 24)


@pytest.mark.parametrize("desc, value", [
    (ClassDescriptor(ClassKind.CENTRAL, (1,)), 1080),
    (ClassDescriptor(ClassKind.CENTRAL, (2,)), 0),
    (ClassDescriptor(ClassKind.PAR1, (1,)), 72),
    (ClassDescriptor(ClassKind.PAR2, (1,)), 12),
    (ClassDescriptor(ClassKind.ELL1, (1, 1, 0)), 9),
    (ClassDescriptor(ClassKind.HYP2, (1, 2, 3)), 9),
    (ClassDescriptor(ClassKind.HYP1, (1, 2)), 0),
])
def test_chi_rho_values_q4(ws4, desc, value):
    assert chi_rho(ws4, desc) == value
    assert induced_char_oracle(ws4, canonical_rep(ws4.ctx, desc)) == value


def test_character_table_q4(ws4, ledger):
    rows = character_table(ws4, ledger)
    assert all(row.match for row in rows)
    assert len(ledger) == 0
    assert character_orthogonality(rows) == group_order(4)


def test_induced_from_k_counts_fixed_points(ws4):
    # неподвижных точек на G/K: |C_G(g)|·|g^G ∩ K| / |K|
    assert induced_char_oracle(ws4, IDENTITY, SUBGROUP_K) == 2880
    ell1 = canonical_rep(ws4.ctx, ClassDescriptor(ClassKind.ELL1, (1, 1, 0)))
    assert induced_char_oracle(ws4, ell1, SUBGROUP_K) == 3


def test_constant_example(ws4, ledger):
    result = example_constant_function(ws4, ledger)
    assert result.holds
    assert result.computed == 181440


def test_k_indicator_example_q4(ws4, ledger):
    assert k_indicator_printed(2, 2) == Fraction(180, 7)
    result = example_k_indicator(ws4, ledger)
    assert result.computed == 18
    assert result.holds
    assert result.details["gamma_orbits"] == 18
    assert get_discrepancies(ledger, "example.k_indicator")


def test_k_indicator_printed_n1():
    assert k_indicator_printed(7, 1) == 1


@pytest.mark.slow
def test_k_indicator_example_q7(ws7, ledger):
    result = example_k_indicator(ws7, ledger)
    assert result.computed == 1
    assert result.holds
    assert len(ledger) == 0


def test_example_identities_order(ws4, ledger):
    results = example_identities(ws4, ledger)
    assert [result.name for result in results] == ["constant", "k_indicator"]
    assert all(result.holds for result in results)
    with pytest.raises(ValueError):
        example_identities(ws4, ledger, which=("theta",))
