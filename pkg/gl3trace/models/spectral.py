"""
Модели спектральной стороны: размеры классов, семейства неприводимых
представлений, кратности и контрольные суммы.
"""
from fractions import Fraction
from typing import Callable, Dict, List, NamedTuple, Optional, Tuple

from gl3trace.models.conjugacy import ClassDescriptor


class ClassSizeConstants(NamedTuple):
    """
    Размеры классов каждого типа в GL₃ над полем из size элементов.

    E1 для квадратичного эллиптического типа (ell2), E2 для кубического (ell1).
    """
    size: int
    H1: int
    H2: int
    P1: int
    P2: int
    P3: int
    E1: int
    E2: int


class IrrepFamily(NamedTuple):
    """Семейство неприводимых представлений GL₃(F_q)."""
    name: str
    domain: str
    dimension: Callable[[int], int]
    cases: Tuple[str, ...]


class CharacterRow(NamedTuple):
    """χ_ρ на G-классе: формула против подсчета неподвижных точек."""
    descriptor: ClassDescriptor
    class_size: int
    formula: Fraction
    oracle: int

    @property
    def match(self) -> bool:
        return self.formula == self.oracle


class MultiplicityRow(NamedTuple):
    family: str
    case: str
    value: Fraction
    count: int
    dimension: int

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1

    @property
    def nonnegative(self) -> bool:
        return self.value >= 0


class MultiplicityReport(NamedTuple):
    p: int
    n: int
    rows: List[MultiplicityRow]

    @property
    def failures(self) -> List[MultiplicityRow]:
        """Строки с ненулевым числом характеров и нецелой или отрицательной кратностью."""
        return [row for row in self.rows if row.count and not (row.integral and row.nonnegative)]


class ChecksumReport(NamedTuple):
    """Контрольные суммы спектральной стороны; None, если проверка не выполнялась."""
    index: int
    dimension_sum: Optional[Fraction]
    group_order: int
    dual_square_sum: int
    square_sum: Optional[Fraction]
    double_cosets: Optional[int]

    @property
    def checks(self) -> Dict[str, Optional[bool]]:
        return {
            "dimension": None if self.dimension_sum is None else self.dimension_sum == self.index,
            "dual": self.dual_square_sum == self.group_order,
            "double_cosets": (
                None if self.square_sum is None or self.double_cosets is None
                else self.square_sum == self.double_cosets
            ),
        }


class ExampleResult(NamedTuple):
    """Результат проверки примера: печатное значение против вычисленного."""
    name: str
    claimed: Fraction
    computed: Fraction
    holds: bool
    details: Dict[str, object]
