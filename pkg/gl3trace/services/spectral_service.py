"""
Сервис спектральной стороны: характер ρ = Ind_Γ^G 1 по замкнутым формулам,
оракулы индуцированных характеров и проверки примеров формулы следа.
"""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence

from config.settings import settings
from gl3trace.exceptions import BudgetExceeded
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind, Mat
from gl3trace.models.ledger import Ledger
from gl3trace.models.spectral import CharacterRow, ClassSizeConstants, ExampleResult
from gl3trace.services.geometric_service import constant_fn, delta_fn, direct_trace_oracle, geometric_side
from gl3trace.services.gl3_service import (
    centralizer_order_formula,
    group_order,
    mat_inv,
    mat_mul,
)
from gl3trace.services.halfspace_service import act, enumerate_halfspace, gamma_orbit_count, halfspace_size
from gl3trace.services.ledger_service import record_discrepancy
from gl3trace.services.workspace_service import TraceWorkspace

logger = logging.getLogger(__name__)

SUBGROUP_GAMMA = "gamma"
SUBGROUP_K = "k"


def class_size_constants(size: int) -> ClassSizeConstants:
    order = group_order(size)

    def sz(kind: ClassKind) -> int:
        return order // centralizer_order_formula(kind, size)

    return ClassSizeConstants(
        size=size,
        H1=sz(ClassKind.HYP1),
        H2=sz(ClassKind.HYP2),
        P1=sz(ClassKind.PAR1),
        P2=sz(ClassKind.PAR2),
        P3=sz(ClassKind.PAR3),
        E1=sz(ClassKind.ELL2),
        E2=sz(ClassKind.ELL1),
    )


def _in_fp(ws: TraceWorkspace, *values: int) -> bool:
    return all(v < ws.p for v in values)


def _hyp2_galois_type(ws: TraceWorkspace, roots) -> Optional[str]:
    """
    Тип множества собственных значений относительно Фробениуса над F_p:
    fp: все в F_p; cubic: одна орбита длины 3; quadratic: точка F_p и орбита длины 2.
    """
    ctx = ws.ctx
    roots = set(roots)
    inside = {r for r in roots if r < ws.p}
    outside = roots - inside
    if len(inside) == 3:
        return "fp"
    if not inside:
        r = min(outside)
        orbit = {r, ctx.frobenius(r), ctx.frobenius(ctx.frobenius(r))}
        return "cubic" if orbit == roots and len(orbit) == 3 else None
    if len(inside) == 1:
        r = min(outside)
        s = ctx.frobenius(r)
        return "quadratic" if s in outside and s != r and ctx.frobenius(s) == r else None
    return None


def chi_rho(ws: TraceWorkspace, desc: ClassDescriptor) -> Fraction:
    """
    χ_ρ(γ) для G-класса desc по формулам для индуцированного характера.

    Ненулевое значение только если класс пересекает Γ; тогда это
    [G:Γ]·(размер Γ-части)/(размер G-класса).
    """
    p, q = ws.p, ws.q
    cp, cq = class_size_constants(p), class_size_constants(q)
    index = Fraction(group_order(q), group_order(p))
    kind, params = desc
    if kind == ClassKind.CENTRAL:
        return index if _in_fp(ws, *params) else Fraction(0)
    if kind == ClassKind.HYP1:
        return index * Fraction(cp.H1, cq.H1) if _in_fp(ws, *params) else Fraction(0)
    if kind == ClassKind.HYP2:
        galois = _hyp2_galois_type(ws, params)
        numerator = {"fp": cp.H2, "cubic": cp.E2, "quadratic": cp.E1}.get(galois, 0)
        return index * Fraction(numerator, cq.H2)
    if kind == ClassKind.PAR1:
        return index * Fraction(cp.P1, cq.P1) if _in_fp(ws, *params) else Fraction(0)
    if kind == ClassKind.PAR2:
        return index * Fraction(cp.P2, cq.P2) if _in_fp(ws, *params) else Fraction(0)
    if kind == ClassKind.PAR3:
        return index * Fraction(cp.P3, cq.P3) if _in_fp(ws, *params) else Fraction(0)
    if kind == ClassKind.ELL2:
        if ws.n % 2 == 0 or not _in_fp(ws, *params):
            return Fraction(0)
        return index * Fraction(cp.E1, cq.E1)
    if ws.n % 3 == 0 or not _in_fp(ws, *params):
        return Fraction(0)
    return index * Fraction(cp.E2, cq.E2)


def induced_char_oracle(ws: TraceWorkspace, g: Mat, subgroup: str = SUBGROUP_GAMMA) -> int:
    """
    Число неподвижных точек g на смежных классах по подгруппе.

    gamma: правые классы Γx с x·g·x⁻¹ ∈ Γ; k: точки H_q = G/K с g·z = z.
    """
    ctx = ws.ctx
    if subgroup == SUBGROUP_GAMMA:
        fixed = 0
        for x in ws.transversal:
            conj = mat_mul(ctx, mat_mul(ctx, x, g), mat_inv(ctx, x))
            if all(entry < ws.p for entry in conj):
                fixed += 1
        return fixed
    if subgroup == SUBGROUP_K:
        size = halfspace_size(ws.q)
        if size > settings.ENUMERATION_BUDGET:
            raise BudgetExceeded("fixed points on the half-space", size, settings.ENUMERATION_BUDGET)
        return sum(1 for z in enumerate_halfspace(ctx) if act(ctx, g, z) == z)
    raise ValueError(f"unknown subgroup {subgroup!r}")


def character_table(ws: TraceWorkspace, ledger: Optional[Ledger] = None) -> List[CharacterRow]:
    """χ_ρ по формуле и оракулом на каждом G-классе."""
    rows = []
    for cls in ws.g_classes:
        formula = chi_rho(ws, cls.descriptor)
        oracle = induced_char_oracle(ws, cls.representative, SUBGROUP_GAMMA)
        row = CharacterRow(cls.descriptor, cls.class_size, formula, oracle)
        if not row.match:
            record_discrepancy(
                ledger, f"chi_rho.{cls.descriptor.kind.value}", formula, oracle, params=list(cls.descriptor.params),
            )
        rows.append(row)
    logger.info("χ_ρ: %s классов, совпадений %s", len(rows), sum(row.match for row in rows))
    return rows


def character_orthogonality(rows: List[CharacterRow]) -> Fraction:
    """Σ |класс|·χ_ρ; равно |G|·m(1, ρ) = |G|."""
    return sum((row.class_size * Fraction(row.oracle) for row in rows), Fraction(0))


# --- примеры ---

def example_constant_function(ws: TraceWorkspace, ledger: Optional[Ledger] = None) -> ExampleResult:
    """f ≡ 1: геометрическая сторона равна |G|."""
    side = geometric_side(ws, constant_fn(1), ledger)
    order = group_order(ws.q)
    holds = side.oracle_total == order and side.direct_total == order
    return ExampleResult(
        "constant", Fraction(order), side.oracle_total, holds,
        {"direct": side.direct_total, "closed": side.closed_total},
    )


def k_indicator_printed(p: int, n: int) -> Fraction:
    """Печатное значение Σ m(π,ρ)m(π,κ) для f = δ_{p₀}."""
    q = p ** n
    value = Fraction(q ** 3 * (q * q - 1) * (q - 1), p ** 3 * (p * p - 1) * (p ** 3 - 1))
    if n % 3:
        value += Fraction(q ** 3 - q, p ** 3 - 1)
    return value


def example_k_indicator(ws: TraceWorkspace, ledger: Optional[Ledger] = None) -> ExampleResult:
    """
    f = δ_{p₀}: прямой след, деленный на |K|, есть целое неотрицательное число,
    равное числу Γ-орбит на H_q; сравнивается с печатной формулой.
    """
    k_order = ws.q ** 3 - 1
    direct = direct_trace_oracle(ws, delta_fn(ws))
    quotient = direct / k_order
    orbits = gamma_orbit_count(ws.ctx)
    holds = quotient.denominator == 1 and quotient >= 0 and quotient == orbits
    printed = k_indicator_printed(ws.p, ws.n)
    if printed != quotient:
        record_discrepancy(ledger, "example.k_indicator", printed, quotient, p=ws.p, n=ws.n)
    return ExampleResult(
        "k_indicator", printed, quotient, holds,
        {"direct": direct, "gamma_orbits": orbits, "printed_matches": printed == quotient},
    )


EXAMPLES = {
    "constant": example_constant_function,
    "k_indicator": example_k_indicator,
}


def example_identities(
    ws: TraceWorkspace, ledger: Optional[Ledger] = None, which: Sequence[str] = tuple(EXAMPLES),
) -> List[ExampleResult]:
    unknown = [name for name in which if name not in EXAMPLES]
    if unknown:
        raise ValueError(f"unknown examples: {unknown}")
    return [EXAMPLES[name](ws, ledger) for name in which]
