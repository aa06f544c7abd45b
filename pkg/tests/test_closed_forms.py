"""Замкнутые формы орбитальных сумм против оракулов."""
import pytest

from gl3trace.exceptions import WrongBranch
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.services.closed_form_service import (
    ELL1_SEXTUPLE,
    ELL1_SPLIT,
    ELL2_EVEN,
    HYP2_APPENDIX,
    HYP2_MAIN,
    claimed_centralizer_order,
    closed_form_status,
    compare_total_contributions,
    natural_branch,
    orbital_location,
    orbital_sum_closed,
    total_contribution,
)
from gl3trace.services.geometric_service import (
    constant_fn,
    delta_fn,
    geometric_side,
    orbital_sum_oracle,
    random_spherical_fn,
)
from gl3trace.services.gl3_service import canonical_rep
from gl3trace.services.ledger_service import get_discrepancies
from gl3trace.services.workspace_service import open_workspace

SPLIT_KINDS = (ClassKind.CENTRAL, ClassKind.HYP1, ClassKind.HYP2, ClassKind.PAR1, ClassKind.PAR3)


def _descriptors(ws, kind, limit=2):
    return [c.descriptor for c in ws.g_classes if c.descriptor.kind == kind][:limit]


@pytest.mark.parametrize("seed", [None, 4])
def test_closed_forms_match_oracle_q4(ws4, seed):
    f = delta_fn(ws4) if seed is None else random_spherical_fn(ws4, seed)
    for kind in SPLIT_KINDS:
        for desc in _descriptors(ws4, kind):
            rep = canonical_rep(ws4.ctx, desc)
            assert orbital_sum_closed(ws4, f, desc) == orbital_sum_oracle(ws4, f, rep), desc


def test_par1_constant_q4(ws4):
    assert orbital_sum_closed(ws4, constant_fn(1), ClassDescriptor(ClassKind.PAR1, (1,))) == 315


def test_par2_closed_form_is_ledgered(ws4, ledger):
    desc = ClassDescriptor(ClassKind.PAR2, (1,))
    assert orbital_sum_closed(ws4, constant_fn(1), desc) == 21 * 5
    assert orbital_sum_oracle(ws4, constant_fn(1), canonical_rep(ws4.ctx, desc)) == 3780
    geometric_side(ws4, constant_fn(1), ledger)
    assert get_discrepancies(ledger, "orbital_sum.par2")
    assert get_discrepancies(ledger, "centralizer_order.par2")


def test_ell2_even_branch_matches_oracle(ws4):
    gamma_ell2 = next(c for c in ws4.gamma_classes if c.descriptor.kind == ClassKind.ELL2)
    assert natural_branch(ws4, gamma_ell2.descriptor) == ELL2_EVEN
    f = random_spherical_fn(ws4, 9)
    closed = orbital_sum_closed(ws4, f, gamma_ell2.descriptor)
    assert closed == orbital_sum_oracle(ws4, f, gamma_ell2.representative)


def test_geometric_rows_agree_or_are_ledgered(ws4, ledger):
    side = geometric_side(ws4, random_spherical_fn(ws4, 6), ledger)
    for row in side.rows:
        if row.match is False or row.closed_status == "undefined":
            location = orbital_location(row.descriptor.kind, ws4.n)
            assert get_discrepancies(ledger, location), location
        if row.descriptor.kind in (ClassKind.CENTRAL, ClassKind.PAR1, ClassKind.ELL2):
            assert row.match is True


def test_ell1_branch_selection(ws4):
    desc = next(c.descriptor for c in ws4.gamma_classes if c.descriptor.kind == ClassKind.ELL1)
    assert natural_branch(ws4, desc) == ELL1_SEXTUPLE
    assert orbital_location(ClassKind.ELL1, 2) == "orbital_sum.ell1.xij"
    assert orbital_location(ClassKind.ELL1, 3) == "orbital_sum.ell1.split"
    with pytest.raises(WrongBranch):
        orbital_sum_closed(ws4, constant_fn(1), desc, branch=ELL1_SPLIT)


def test_single_form_kinds_reject_branch(ws4):
    with pytest.raises(WrongBranch):
        orbital_sum_closed(ws4, constant_fn(1), ClassDescriptor(ClassKind.HYP1, (1, 2)), branch=ELL1_SPLIT)


def test_ell2_outside_prime_field_has_no_form(ws4):
    desc = next(
        c.descriptor for c in ws4.g_classes
        if c.descriptor.kind == ClassKind.ELL2 and any(x >= ws4.p for x in c.descriptor.params[:2])
    )
    value, status = closed_form_status(ws4, constant_fn(1), desc)
    assert value is None
    assert status == "unavailable"


def test_claimed_par2_centralizer_is_borel():
    assert claimed_centralizer_order(ClassKind.PAR2, 4) == 4 ** 3 * 3 ** 3
    assert claimed_centralizer_order(ClassKind.HYP2, 4) == 27


def test_total_contributions_q4(ws4, ledger):
    f = random_spherical_fn(ws4, 8)
    rows = compare_total_contributions(ws4, f, ledger)
    by_kind = {(row.kind, row.variant): row for row in rows}
    assert by_kind[("central", "central")].match is True
    assert by_kind[("ell1", "xij")].closed_value is None
    assert ("hyp2", HYP2_MAIN) in by_kind and ("hyp2", HYP2_APPENDIX) in by_kind
    # при p = 2 у Γ нет классов hyp1, hyp2, par3
    for kind in ("hyp1", "par3"):
        assert by_kind[(kind, kind)].oracle_value == 0
        assert by_kind[(kind, kind)].closed_value == 0
    for row in rows:
        if row.match is False:
            assert get_discrepancies(ledger, f"total_contribution.{row.kind}.{row.variant}")


def test_central_total(ws4):
    assert total_contribution(ws4, constant_fn(1), ClassKind.CENTRAL) == 1080


@pytest.mark.slow
def test_split_ell1_constant_q64():
    ws = open_workspace(2, 6)
    desc = ClassDescriptor(ClassKind.ELL1, (1, 1, 0))
    assert natural_branch(ws, desc) == ELL1_SPLIT
    q = 64
    assert orbital_sum_closed(ws, constant_fn(1), desc) == (q * q + q + 1) * q ** 3 * (q + 1)
