"""
Модель журнала расхождений между печатными формулами и оракулами.
"""
from typing import Any, Dict, List, NamedTuple


class Discrepancy(NamedTuple):
    """Запись о расхождении: где, что заявлено, что вычислено."""
    location: str
    claimed: str
    computed: str
    context: Dict[str, Any]


class Ledger:
    """Упорядоченный журнал расхождений одного запуска."""

    def __init__(self):
        self.entries: List[Discrepancy] = []
        self._keys = set()

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        return f"<Ledger(entries={len(self.entries)})>"
