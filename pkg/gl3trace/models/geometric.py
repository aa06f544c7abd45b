"""
Модели геометрической стороны: профили орбитальных сумм и строки отчета.
"""
from collections import Counter
from fractions import Fraction
from typing import List, NamedTuple, Optional

from gl3trace.models.conjugacy import ClassDescriptor, Mat


class Profile(NamedTuple):
    """
    Сумма по множеству точек H_q, сгруппированных по K-орбитам.

    Значение на f равно scale · Σ counts[rep]·f(rep).
    """
    counts: Counter
    scale: Fraction

    @property
    def total(self) -> Fraction:
        return self.scale * sum(self.counts.values())


class GeomTerm(NamedTuple):
    """Вклад одного Γ-класса в геометрическую сторону."""
    descriptor: ClassDescriptor
    representative: Mat
    g_descriptor: ClassDescriptor
    centralizer_g: int
    centralizer_gamma: int
    claimed_centralizer_g: int
    claimed_centralizer_gamma: int
    weight: Fraction
    oracle_value: Fraction
    closed_value: Optional[Fraction]
    closed_status: str
    match: Optional[bool]


class GeometricSide(NamedTuple):
    """Геометрическая сторона для одной функции f."""
    function: str
    rows: List[GeomTerm]
    oracle_total: Fraction
    closed_total: Optional[Fraction]
    direct_total: Fraction

    @property
    def chain_holds(self) -> bool:
        return self.oracle_total == self.direct_total


class TotalRow(NamedTuple):
    """Суммарный вклад типа классов: печатная формула против оракула."""
    kind: str
    variant: str
    closed_value: Optional[Fraction]
    oracle_value: Fraction
    match: Optional[bool]
