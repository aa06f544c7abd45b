"""
Сервис кратностей m(π, ρ) неприводимых представлений GL₃(F_q) в ρ = Ind_Γ^G 1
для режима gcd(n, 6) = 1 и контрольных сумм разложения.
"""
import logging
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, Optional, Tuple

from gl3trace.exceptions import NonIntegralMultiplicity, UnknownCondition, UnsupportedRegime
from gl3trace.models.field import FieldCtx
from gl3trace.models.spectral import ChecksumReport, IrrepFamily, MultiplicityReport, MultiplicityRow
from gl3trace.services.char_count_service import count_chars
from gl3trace.services.gl3_service import double_coset_count, group_order

logger = logging.getLogger(__name__)

FAMILIES: Dict[str, IrrepFamily] = {
    family.name: family
    for family in (
        IrrepFamily("alpha", "alpha", lambda q: 1, ("cube_nontrivial", "cube_trivial", "trivial")),
        IrrepFamily("pi_alpha", "alpha", lambda q: q * q + q, ("cube_nontrivial", "cube_trivial", "trivial")),
        IrrepFamily("pi_alpha_prime", "alpha", lambda q: q ** 3, ("cube_nontrivial", "cube_trivial", "trivial")),
        IrrepFamily(
            "pi_ab", "pair", lambda q: q * q + q + 1,
            ("a2b_nontrivial", "a2b_trivial", "a2_b_trivial", "a_b_trivial"),
        ),
        IrrepFamily(
            "pi_ab_prime", "pair", lambda q: q * (q * q + q + 1),
            ("a2b_nontrivial", "a2b_trivial", "a2_b_trivial", "a_b_trivial"),
        ),
        IrrepFamily(
            "pi_abc", "triple", lambda q: (q + 1) * (q * q + q + 1),
            ("abc_nontrivial", "none_trivial", "one_trivial", "all_trivial"),
        ),
        IrrepFamily(
            "rho_a_nu", "rho", lambda q: (q - 1) * (q * q + q + 1),
            ("anu_nontrivial", "anu_trivial", "nu_p2_nontrivial", "nu_p2_trivial"),
        ),
        IrrepFamily(
            "sigma_mu", "sigma", lambda q: (q - 1) ** 2 * (q + 1),
            ("mu_nontrivial", "mu_p3_nontrivial", "mu_p3_trivial"),
        ),
    )
}


def _numerators(p: int, q: int) -> Dict[Tuple[str, str], int]:
    """Числители кратностей; знаменатель общий: p³(p-1)²(p+1)(p²+p+1)."""
    return {
        ("pi_alpha", "cube_trivial"): (q - p) * (q - p ** 2),
        ("pi_alpha", "trivial"): (q - p) * (q + p ** 5 - 2 * p ** 2),
        ("pi_alpha_prime", "cube_trivial"): (q - p) * (q - p ** 2) * (q + p ** 2 + p),
        ("pi_alpha_prime", "trivial"): (q - p) * (q * q + p * q + p ** 5 - p ** 4 - p ** 3 - p ** 2),
        ("pi_ab", "a2b_trivial"): (q - p) * (q - p ** 2),
        ("pi_ab", "a2_b_trivial"): (q - p) * (q - p ** 2),
        ("pi_ab", "a_b_trivial"): (
            q * (q + p ** 5 - 2 * p ** 2 - p) + p ** 3 * (p ** 5 - 2 * p ** 3 - p ** 2 + 3)
        ),
        ("pi_ab_prime", "a2b_trivial"): (q - p) * (q - p ** 2) * (q + p ** 2 + p + 1),
        ("pi_ab_prime", "a2_b_trivial"): (q - p) * (q * (q + p + 1) + p ** 2 * (p ** 3 - p ** 2 - p - 2)),
        ("pi_ab_prime", "a_b_trivial"): (q - p) * (q * (q + p + 1) + p ** 2 * (2 * p - 3) * (p ** 2 + p + 1)),
        ("pi_abc", "none_trivial"): (q - p) * (q - p ** 2) * (q + p ** 2 + p + 2),
        ("pi_abc", "one_trivial"): (q - p) * (q * (q + p + 2) + p ** 2 * (p ** 3 - p ** 2 - p - 3)),
        ("pi_abc", "all_trivial"): (
            q * (q * q + 2 * q + 3 * p ** 5 - p ** 4 - p ** 3 - 6 * p ** 2 - 2 * p)
            + p ** 3 * (p ** 5 - 4 * p ** 3 + p + 6)
        ),
        ("rho_a_nu", "anu_trivial"): (q - p) * (q - p ** 2) * (q + p ** 2 + p),
        ("rho_a_nu", "nu_p2_nontrivial"): (q - p) * (q * (q + p) + p ** 2 * (p ** 3 - p ** 2 - p - 1)),
        ("rho_a_nu", "nu_p2_trivial"): (
            q * (q * q + p ** 5 - p ** 4 - p ** 3 - 2 * p ** 2) + p ** 4 * (-p ** 4 + 2 * p + 1)
        ),
        ("sigma_mu", "mu_p3_nontrivial"): (q - p) * (q - p ** 2) * (q + p ** 2 + p - 1),
        ("sigma_mu", "mu_p3_trivial"): q * (q * q - q - p ** 4 - p ** 3 + p) + p ** 4 * (p ** 4 - p ** 2 + 1),
    }


def check_regime(n: int) -> None:
    if gcd(n, 6) != 1:
        raise UnsupportedRegime(f"multiplicities are only known for gcd(n, 6) = 1, got n={n}", n=n)


def multiplicity(family: str, case: str, p: int, n: int) -> Fraction:
    """m(π, ρ) для представлений семейства family в случае case."""
    check_regime(n)
    if family not in FAMILIES or case not in FAMILIES[family].cases:
        raise UnknownCondition(f"unknown multiplicity case {family}.{case}", condition=f"{family}.{case}")
    if family == "alpha":
        return Fraction(1 if case == "trivial" else 0)
    if case == FAMILIES[family].cases[0]:
        return Fraction(0)
    q = p ** n
    denominator = p ** 3 * (p - 1) ** 2 * (p + 1) * (p ** 2 + p + 1)
    return Fraction(_numerators(p, q)[(family, case)], denominator)


CountFn = Callable[[str, int, int], int]


def decompose(p: int, n: int, strict: bool = False, counter: Optional[CountFn] = None) -> MultiplicityReport:
    """
    Все кратности с числом характеров каждого случая.

    strict: NonIntegralMultiplicity для первой нецелой или отрицательной
    кратности среди случаев с ненулевым числом характеров.
    """
    check_regime(n)
    counter = counter or count_chars
    q = p ** n
    rows = []
    for family in FAMILIES.values():
        for case in family.cases:
            rows.append(MultiplicityRow(
                family.name, case, multiplicity(family.name, case, p, n),
                counter(f"{family.domain}.{case}", p, q), family.dimension(q),
            ))
    report = MultiplicityReport(p, n, rows)
    for row in report.failures:
        logger.error("Кратность %s.%s = %s при p=%s, n=%s", row.family, row.case, row.value, p, n)
        if strict:
            raise NonIntegralMultiplicity(
                f"m({row.family}.{row.case}) = {row.value}", family=row.family, case=row.case, p=p, n=n,
            )
    return report


def dual_square_sum(p: int, q: int) -> int:
    """Σ по всем неприводимым представлениям dim²."""
    return sum(
        count_chars(f"{family.domain}.any", p, q) * family.dimension(q) ** 2
        for family in FAMILIES.values()
    )


def spectral_checksums(p: int, n: int, ctx: Optional[FieldCtx] = None) -> ChecksumReport:
    """
    Контрольные суммы: Σ m·dim = [G:Γ] и Σ m² = |Γ\\G/Γ| (при gcd(n, 6) = 1),
    Σ dim² = |G| (всегда). Число двойных классов считается оракулом, если
    передано поле.
    """
    q = p ** n
    index = group_order(q) // group_order(p)
    dimension_sum = square_sum = None
    if gcd(n, 6) == 1:
        report = decompose(p, n)
        dimension_sum = sum((row.count * row.value * row.dimension for row in report.rows), Fraction(0))
        square_sum = sum((row.count * row.value ** 2 for row in report.rows), Fraction(0))
    double_cosets = double_coset_count(ctx) if ctx is not None else None
    checksums = ChecksumReport(index, dimension_sum, group_order(q), dual_square_sum(p, q), square_sum, double_cosets)
    logger.info("Контрольные суммы p=%s n=%s: %s", p, n, checksums.checks)
    return checksums
