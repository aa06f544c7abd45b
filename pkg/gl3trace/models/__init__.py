"""
Модели верификатора: поля, матрицы и классы, точки H_q, функции, журнал.
"""
from .conjugacy import ClassData, ClassDescriptor, ClassKind, Mat
from .field import FieldCtx, FieldElem, FieldLevel, MultChar
from .geometric import GeometricSide, GeomTerm, Profile, TotalRow
from .halfspace import AffineRep, HPoint, OrbitTable
from .ledger import Discrepancy, Ledger
from .spectral import (
    CharacterRow,
    ChecksumReport,
    ClassSizeConstants,
    ExampleResult,
    IrrepFamily,
    MultiplicityReport,
    MultiplicityRow,
)
from .spherical import SphericalFn

__all__ = [
    "ClassData",
    "ClassDescriptor",
    "ClassKind",
    "Mat",
    "FieldCtx",
    "FieldElem",
    "FieldLevel",
    "MultChar",
    "GeometricSide",
    "GeomTerm",
    "Profile",
    "TotalRow",
    "AffineRep",
    "HPoint",
    "OrbitTable",
    "Discrepancy",
    "Ledger",
    "CharacterRow",
    "ChecksumReport",
    "ClassSizeConstants",
    "ExampleResult",
    "IrrepFamily",
    "MultiplicityReport",
    "MultiplicityRow",
    "SphericalFn",
]
