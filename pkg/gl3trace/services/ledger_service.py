"""
Сервис для работы с журналом расхождений.
"""
import json
import logging
from typing import Any, List, Optional

from gl3trace.models.ledger import Discrepancy, Ledger
from gl3trace.utils.numbers import format_number

logger = logging.getLogger(__name__)


def create_ledger() -> Ledger:
    return Ledger()


def record_discrepancy(
    ledger: Optional[Ledger],
    location: str,
    claimed: Any,
    computed: Any,
    **context: Any,
) -> Optional[Discrepancy]:
    """
    Записать расхождение печатной формулы с оракулом.

    Повторная запись с теми же location/claimed/computed/context игнорируется.
    Без журнала расхождение только логируется.
    """
    entry = Discrepancy(
        location=location,
        claimed=format_number(claimed),
        computed=format_number(computed),
        context={key: format_number(value) for key, value in sorted(context.items())},
    )
    logger.warning("Расхождение в %s: заявлено %s, вычислено %s", location, entry.claimed, entry.computed)
    if ledger is None:
        return entry
    key = (entry.location, entry.claimed, entry.computed, json.dumps(entry.context, sort_keys=True, default=str))
    if key in ledger._keys:
        return None
    ledger._keys.add(key)
    ledger.entries.append(entry)
    return entry


def get_discrepancies(ledger: Ledger, location: Optional[str] = None) -> List[Discrepancy]:
    """Записи журнала, опционально отфильтрованные по префиксу location."""
    if location is None:
        return list(ledger.entries)
    return [entry for entry in ledger.entries if entry.location.startswith(location)]


def count_discrepancies(ledger: Ledger, location: Optional[str] = None) -> int:
    return len(get_discrepancies(ledger, location))
