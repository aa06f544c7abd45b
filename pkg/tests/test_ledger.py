"""Журнал расхождений."""
from fractions import Fraction

from gl3trace.services.ledger_service import (
    count_discrepancies,
    create_ledger,
    get_discrepancies,
    record_discrepancy,
)


def test_list_context_is_deduplicated():
    ledger = create_ledger()
    first = record_discrepancy(ledger, "orbital_sum.par2", 105, 3780, params=[1], q=4)
    second = record_discrepancy(ledger, "orbital_sum.par2", 105, 3780, params=[1], q=4)
    assert first is not None
    assert second is None
    assert len(ledger) == 1
    assert ledger.entries[0].context == {"params": ["1"], "q": "4"}


def test_different_params_are_kept():
    ledger = create_ledger()
    record_discrepancy(ledger, "chi_rho.hyp2", 9, 8, params=[1, 2, 3])
    record_discrepancy(ledger, "chi_rho.hyp2", 9, 8, params=[1, 2, 4])
    assert count_discrepancies(ledger, "chi_rho") == 2


def test_values_are_formatted():
    ledger = create_ledger()
    entry = record_discrepancy(ledger, "example.k_indicator", Fraction(180, 7), 18, p=2, n=2)
    assert (entry.claimed, entry.computed) == ("180/7", "18")
    assert get_discrepancies(ledger, "example") == [entry]
    assert get_discrepancies(ledger, "orbital_sum") == []


def test_without_ledger_entry_is_returned():
    entry = record_discrepancy(None, "orbital_sum.par2", 1, 2, params=[1])
    assert entry.location == "orbital_sum.par2"
