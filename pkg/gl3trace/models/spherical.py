"""
K-биинвариантные функции на G, заданные на K-орбитах H_q.
"""
from fractions import Fraction
from typing import Dict, Mapping, Optional

from gl3trace.models.halfspace import HPoint, OrbitTable


class SphericalFn:
    """
    Функция f на K\\G/K со значениями в Q.

    Значение в g равно values[rep(g·p₀)], где rep есть канонический представитель
    K-орбиты. Постоянная функция хранится без таблицы.
    """

    def __init__(
        self,
        name: str,
        values: Optional[Mapping[HPoint, Fraction]] = None,
        orbits: Optional[OrbitTable] = None,
        constant: Optional[Fraction] = None,
    ):
        if constant is None and (values is None or orbits is None):
            raise ValueError("a tabulated function needs both values and an orbit table")
        self.name = name
        self.values: Dict[HPoint, Fraction] = dict(values or {})
        self.orbits = orbits
        self.constant = None if constant is None else Fraction(constant)

    @property
    def is_constant(self) -> bool:
        return self.constant is not None

    def at_point(self, z: HPoint) -> Fraction:
        if self.constant is not None:
            return self.constant
        return self.values.get(self.orbits.rep_of[z], Fraction(0))

    def at_rep(self, rep: HPoint) -> Fraction:
        """Значение на уже канонизированной точке."""
        if self.constant is not None:
            return self.constant
        return self.values.get(rep, Fraction(0))

    def __repr__(self):
        kind = f"constant={self.constant}" if self.is_constant else f"orbits={len(self.values)}"
        return f"<SphericalFn({self.name}, {kind})>"
