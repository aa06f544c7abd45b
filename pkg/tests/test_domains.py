"""Фундаментальные области централизаторов на H_4."""
import pytest

from gl3trace.exceptions import UnsupportedKind
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.models.field import FieldLevel
from gl3trace.services.domain_service import (
    borel_elements,
    case_one_bijection,
    check_domains,
    domain_size_formula,
    fundamental_domain,
    orbit_sizes_cover,
    verify_fundamental_domain,
)
from gl3trace.services.gl3_service import canonical_rep, centralizer_elements
from gl3trace.services.halfspace_service import enumerate_halfspace
from gl3trace.services.ledger_service import get_discrepancies

HYP1 = ClassDescriptor(ClassKind.HYP1, (1, 2))


def _centralizer(ctx, desc):
    return centralizer_elements(ctx, canonical_rep(ctx, desc), FieldLevel.FQ)


def test_domain_points_lie_in_halfspace(ws4):
    points = set(enumerate_halfspace(ws4.ctx))
    for kind in (ClassKind.HYP1, ClassKind.HYP2, ClassKind.PAR1, ClassKind.PAR2, ClassKind.PAR3):
        desc = next(c.descriptor for c in ws4.g_classes if c.descriptor.kind == kind)
        domain = list(fundamental_domain(ws4.ctx, desc))
        assert len(domain) == domain_size_formula(kind, 4)
        assert set(domain) <= points


def test_hyp1_domain(ws4):
    ctx = ws4.ctx
    group = _centralizer(ctx, HYP1)
    check = verify_fundamental_domain(ctx, list(fundamental_domain(ctx, HYP1)), group)
    assert check.ok
    assert check.orbit_count == 16
    assert orbit_sizes_cover(ctx, check)


def test_dropped_point_is_detected(ws4):
    ctx = ws4.ctx
    domain = list(fundamental_domain(ctx, HYP1))[1:]
    check = verify_fundamental_domain(ctx, domain, _centralizer(ctx, HYP1))
    assert not check.complete
    assert check.unique


def test_borel_domain(ws4):
    ctx = ws4.ctx
    domain = list(fundamental_domain(ctx, ClassDescriptor(ClassKind.PAR2, (1,))))
    assert len(borel_elements(ctx)) == 4 ** 3 * 3 ** 3
    check = verify_fundamental_domain(ctx, domain, borel_elements(ctx))
    assert check.ok
    assert check.orbit_count == 5


def test_check_domains_q4(ws4, ledger):
    rows = check_domains(ws4.ctx, ws4.g_classes, ledger)
    failed = [(row.kind, row.group) for row in rows if not row.check.ok]
    assert failed == [(ClassKind.PAR2, "centralizer")]
    assert all(row.check.domain_size == row.expected_size for row in rows)
    assert all(orbit_sizes_cover(ws4.ctx, row.check) for row in rows if row.check.ok)
    entries = get_discrepancies(ledger, "fundamental_domain")
    assert [entry.location for entry in entries] == ["fundamental_domain.par2"]
    assert entries[0].context["group"] == "centralizer"
    assert all(row.bijection is (True if row.group == "centralizer" else None) for row in rows)
    assert not get_discrepancies(ledger, "case_one_bijection")


@pytest.mark.parametrize("kind, params", [
    (ClassKind.HYP1, (1, 2)),
    (ClassKind.HYP2, (1, 2, 3)),
    (ClassKind.PAR1, (1,)),
    (ClassKind.PAR3, (1, 2)),
])
def test_case_one_bijection(ws4, kind, params):
    assert case_one_bijection(ws4.ctx, _centralizer(ws4.ctx, ClassDescriptor(kind, params)))


def test_ell1_has_no_domain(ws4):
    desc = next(c.descriptor for c in ws4.g_classes if c.descriptor.kind == ClassKind.ELL1)
    with pytest.raises(UnsupportedKind):
        list(fundamental_domain(ws4.ctx, desc))


@pytest.mark.slow
def test_check_domains_q7(ws7, ledger):
    rows = check_domains(ws7.ctx, ws7.g_classes, ledger)
    kinds = {(row.kind, row.group) for row in rows}
    assert (ClassKind.ELL2, "centralizer") in kinds
    failed = [(row.kind, row.group) for row in rows if not row.check.ok]
    assert failed == [(ClassKind.PAR2, "centralizer")]
    assert all(row.check.domain_size == row.expected_size for row in rows)
    assert all(row.bijection for row in rows if row.group == "centralizer")
    ell2 = next(row for row in rows if row.kind == ClassKind.ELL2)
    assert ell2.check.orbit_count == 7 ** 3 * 6
    assert [entry.location for entry in get_discrepancies(ledger)] == ["fundamental_domain.par2"]
