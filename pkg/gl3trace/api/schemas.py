"""
Pydantic схемы конфигурации запуска и отчетов.

Числа в отчетах пишутся десятичными строками, рациональные как "num/den".
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, field_validator
from sympy import isprime

from gl3trace.exceptions import ConfigurationError, NotCongruent1Mod3, NotPrime
from gl3trace.services.gf_tower_service import DELTA_RULES
from gl3trace.utils.numbers import format_number

OUTPUT_FORMATS = ("json", "csv")
FUNCTIONS = ("constant", "delta", "random")


# Конфигурация запуска
class RunConfig(BaseModel):
    """Параметры одного запуска CLI."""
    p: int
    n: int
    poly: Optional[List[int]] = None
    delta_rule: str = "first-nonresidue"
    seed: int = 1
    num_f: int = 20
    budget: Optional[int] = None
    f_table: Optional[str] = None
    out: Optional[str] = None
    format: Optional[str] = None
    function: str = "constant"

    @field_validator("delta_rule")
    @classmethod
    def check_delta_rule(cls, value: str) -> str:
        if value not in DELTA_RULES:
            raise ValueError(f"delta rule must be one of {', '.join(DELTA_RULES)}")
        return value

    @field_validator("format")
    @classmethod
    def check_format(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in OUTPUT_FORMATS:
            raise ValueError(f"format must be one of {', '.join(OUTPUT_FORMATS)}")
        return value

    @field_validator("function")
    @classmethod
    def check_function(cls, value: str) -> str:
        if value not in FUNCTIONS:
            raise ValueError(f"function must be one of {', '.join(FUNCTIONS)}")
        return value

    @property
    def q(self) -> int:
        return self.p ** self.n

    def validate_field(self) -> None:
        """p простое, n ≥ 1, число функций неотрицательно."""
        if not isprime(self.p):
            raise NotPrime(f"{self.p} is not prime", p=self.p)
        if self.n < 1:
            raise ConfigurationError(f"n must be positive, got {self.n}", detail=f"n = {self.n}")
        if self.num_f < 0:
            raise ConfigurationError("--num-f must be nonnegative", detail=f"num_f = {self.num_f}")

    def require_halfspace(self) -> None:
        """Полупространство H_q определено только при q ≡ 1 (mod 3)."""
        self.validate_field()
        if self.q % 3 != 1:
            raise NotCongruent1Mod3(f"q={self.q} is not congruent to 1 mod 3", q=self.q)

    def echo(self) -> Dict[str, Any]:
        data = self.model_dump(exclude={"out", "format", "f_table"})
        return {key: format_number(value) for key, value in data.items()}


# Заголовок отчета
class ReportHeader(BaseModel):
    app: str
    version: str
    command: str
    config: Dict[str, Any]
    field: Optional[Dict[str, Any]] = None
    limitations: List[str] = []


class DiscrepancySchema(BaseModel):
    location: str
    claimed: Any
    computed: Any
    context: Dict[str, Any]


# Геометрическая сторона
class GeomRowSchema(BaseModel):
    kind: str
    params: List[str]
    representative: List[str]
    g_kind: str
    centralizer_g: str
    centralizer_gamma: str
    claimed_centralizer_g: str
    claimed_centralizer_gamma: str
    weight: str
    oracle_value: str
    closed_value: Optional[str] = None
    closed_status: str
    match: Optional[bool] = None


class TotalRowSchema(BaseModel):
    kind: str
    variant: str
    closed_value: Optional[str] = None
    oracle_value: str
    match: Optional[bool] = None


class GeometricSchema(BaseModel):
    function: str
    rows: List[GeomRowSchema]
    totals: List[TotalRowSchema]
    oracle_total: str
    closed_total: Optional[str] = None
    direct_total: str
    chain_holds: bool
    bi_invariant: bool


class DomainRowSchema(BaseModel):
    kind: str
    group: str
    domain_size: str
    expected_size: str
    orbit_count: str
    complete: bool
    unique: bool
    bijection: Optional[bool] = None


# Спектральная сторона
class CharacterRowSchema(BaseModel):
    kind: str
    params: List[str]
    class_size: str
    formula: str
    oracle: str
    match: bool


class CharacterSchema(BaseModel):
    rows: List[CharacterRowSchema]
    identity_value: str
    index: str
    orthogonality: str
    group_order: str


class MultiplicityRowSchema(BaseModel):
    family: str
    case: str
    value: str
    count: str
    dimension: str
    integral: bool
    nonnegative: bool


class ChecksumSchema(BaseModel):
    index: str
    dimension_sum: Optional[str] = None
    group_order: str
    dual_square_sum: str
    square_sum: Optional[str] = None
    double_cosets: Optional[str] = None
    checks: Dict[str, Optional[bool]]


class ExampleSchema(BaseModel):
    name: str
    claimed: str
    computed: str
    holds: bool
    details: Dict[str, Any]


class VerifyReport(BaseModel):
    header: ReportHeader
    geometric: List[GeometricSchema]
    domains: List[DomainRowSchema]
    characters: CharacterSchema
    checksums: ChecksumSchema
    examples: List[ExampleSchema]
    failures: List[str]
    discrepancies: List[DiscrepancySchema]


class OrbitalReport(BaseModel):
    header: ReportHeader
    kind: str
    params: List[str]
    representative: List[str]
    function: str
    closed_value: Optional[str] = None
    closed_status: str
    oracle_value: Optional[str] = None
    match: Optional[bool] = None
    horocycle_inputs: List[Dict[str, Any]]
    discrepancies: List[DiscrepancySchema]


class DecomposeReport(BaseModel):
    header: ReportHeader
    multiplicities: List[MultiplicityRowSchema]
    checksums: ChecksumSchema
    failures: List[str]


class CharCountRowSchema(BaseModel):
    condition: str
    enumerated: Optional[str] = None
    formula: str
    match: Optional[bool] = None


class CharsReport(BaseModel):
    header: ReportHeader
    rows: List[CharCountRowSchema]
