"""
Модели конечного верхнего полупространства H_q.
"""
from typing import Dict, List, NamedTuple, Tuple


class HPoint(NamedTuple):
    """Точка (α, β) ∈ H_q; α, β задаются кодами элементов F_{q³}."""
    alpha: int
    beta: int


class AffineRep(NamedTuple):
    """Аффинная матрица [[a, b, c], [d, e, f], [0, 0, 1]] над F_q (ae - bd ≠ 0)."""
    a: int
    b: int
    c: int
    d: int
    e: int
    f: int

    def as_matrix(self) -> Tuple[int, ...]:
        return (self.a, self.b, self.c, self.d, self.e, self.f, 0, 0, 1)


class OrbitTable(NamedTuple):
    """Разбиение H_q на K-орбиты."""
    rep_of: Dict[HPoint, HPoint]
    sizes: Dict[HPoint, int]
    reps: List[HPoint]
