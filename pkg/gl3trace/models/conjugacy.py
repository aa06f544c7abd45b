"""
Модели матриц GL₃ и классов сопряженности.
"""
import enum
from typing import NamedTuple, Tuple

from gl3trace.models.field import FieldLevel

# Матрица 3×3: кортеж из 9 кодов F_q построчно
Mat = Tuple[int, ...]


class ClassKind(str, enum.Enum):
    """Восемь типов классов сопряженности GL₃."""
    CENTRAL = "central"
    HYP1 = "hyp1"
    HYP2 = "hyp2"
    PAR1 = "par1"
    PAR2 = "par2"
    PAR3 = "par3"
    ELL1 = "ell1"
    ELL2 = "ell2"


class ClassDescriptor(NamedTuple):
    """
    Тип класса и его параметры (коды элементов).

    central (a); hyp1 (a, b); hyp2 (a, b, c) по возрастанию кода;
    par1 (a); par2 (a); par3 (a, b); ell1 (c0, c1, c2) для x³+c2x²+c1x+c0;
    ell2 (u, v, m) для (x²+ux+v)(x-m).
    """
    kind: ClassKind
    params: Tuple[int, ...]


class ClassData(NamedTuple):
    """Класс сопряженности с представителем и порядками."""
    descriptor: ClassDescriptor
    representative: Mat
    class_size: int
    centralizer_order: int
    level: FieldLevel
