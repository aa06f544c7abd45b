"""
Сервис замкнутых форм геометрической стороны.

Печатные формулы орбитальных сумм I_G(f, γ) для каждого типа класса,
суммарные вклады типов и заявленные порядки централизаторов. Формулы
вычисляются как напечатаны; расхождения с оракулами фиксируются в журнале,
а не исправляются.
"""
import logging
from collections import Counter
from fractions import Fraction
from itertools import combinations, product
from typing import List, Optional, Tuple

from gl3trace.exceptions import HalfspaceError, UnsupportedKind, WrongBranch
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.models.field import FieldLevel
from gl3trace.models.geometric import Profile, TotalRow
from gl3trace.models.halfspace import HPoint
from gl3trace.models.ledger import Ledger
from gl3trace.models.spherical import SphericalFn
from gl3trace.services.geometric_service import (
    Kappa,
    evaluate_profile,
    horocycle_transform,
    orbital_sum_oracle,
)
from gl3trace.services.gl3_service import (
    centralizer_order_formula,
    char_poly,
    ell2_parameters,
    factor_linear,
    group_order,
    prime_nonsquare,
)
from gl3trace.services.halfspace_service import apply_to_base, is_valid_point, k_matrix
from gl3trace.services.ledger_service import record_discrepancy
from gl3trace.services.workspace_service import TraceWorkspace

logger = logging.getLogger(__name__)

# Ветки эллиптических форм
ELL1_SPLIT = "split"      # 3 | n: корни в F_q
ELL1_SEXTUPLE = "xij"     # 3 ∤ n: сумма по a, b, c, d, e, f
ELL2_EVEN = "even"
ELL2_ODD = "odd"

HYP2_MAIN = "main"
HYP2_APPENDIX = "appendix"


def claimed_centralizer_order(kind: ClassKind, q: int) -> int:
    """Печатный порядок централизатора; для par2 указана борелевская подгруппа."""
    if kind == ClassKind.PAR2:
        return q ** 3 * (q - 1) ** 3
    return centralizer_order_formula(kind, q)


def natural_branch(ws: TraceWorkspace, desc: ClassDescriptor) -> Optional[str]:
    """Ветка эллиптической формы для класса: по разложимости над F_q."""
    ctx = ws.ctx
    if desc.kind == ClassKind.ELL1:
        roots, _ = factor_linear(ctx, desc.params + (1,), range(1, ctx.q))
        return ELL1_SPLIT if roots else ELL1_SEXTUPLE
    if desc.kind == ClassKind.ELL2:
        u, v, _ = desc.params
        if u >= ctx.p or v >= ctx.p:
            return None
        return ELL2_EVEN if ws.n % 2 == 0 else ELL2_ODD
    return None


def orbital_location(kind: ClassKind, n: int) -> str:
    """Метка формулы для журнала."""
    if kind == ClassKind.ELL1:
        return f"orbital_sum.ell1.{ELL1_SPLIT if n % 3 == 0 else ELL1_SEXTUPLE}"
    if kind == ClassKind.ELL2:
        return f"orbital_sum.ell2.{ELL2_EVEN if n % 2 == 0 else ELL2_ODD}"
    return f"orbital_sum.{kind.value}"


def _k_over_z(q: int) -> int:
    return q * q + q + 1


def _f_at(ws: TraceWorkspace, f: SphericalFn, z: HPoint) -> Fraction:
    return f.constant if f.is_constant else f.at_point(z)


def _f_p0(ws: TraceWorkspace, f: SphericalFn) -> Fraction:
    return f.constant if f.is_constant else f.at_point(ws.p0)


def _diag2(a: int, b: int) -> Kappa:
    return (a, 0, 0, b)


def par2_sum(ws: TraceWorkspace, f: SphericalFn) -> Fraction:
    """
    f(δ^{1/3}+δ^{2/3}, 1+δ^{1/3}) + Σ_v f(1 - v²·δ^{1/3} + (1-v)·δ^{2/3}, (v+1)·δ^{1/3} + δ^{2/3}).

    Не зависит от собственного значения a.
    """
    ctx = ws.ctx
    join = ctx.t_join
    total = _f_at(ws, f, HPoint(join(0, 1, 1), join(1, 1, 0)))
    for v in range(ctx.q):
        alpha = join(1, ctx.neg(ctx.mul(v, v)), ctx.sub(1, v))
        beta = join(0, ctx.add(v, 1), 1)
        total += _f_at(ws, f, HPoint(alpha, beta))
    return total


def ell1_eigenvalue(ws: TraceWorkspace, params: Tuple[int, int, int]) -> int:
    """Наименьший λ ∈ F_{q³} с χ(k(λ)) = x³ + c₂x² + c₁x + c₀."""
    ctx = ws.ctx
    for lam in range(1, ctx.top_size):
        if char_poly(ctx, k_matrix(ctx, lam)) == tuple(params):
            return lam
    raise UnsupportedKind(f"{params} is not the characteristic polynomial of an element of K", params=list(params))


def sextuple_profile(ws: TraceWorkspace, params: Tuple[int, int, int]) -> Profile:
    """
    Профиль суммы по a, b, c, d, e, f ∈ F_q (bd - ae ≠ 0) значений f(X·p₀),
    где X = (x_ij) есть матрица, построенная по координатам (α, β, ε) собственного
    значения λ = α + β·δ^{1/3} + ε·δ^{2/3}.

    HalfspaceError, если X·p₀ не лежит в H_q для какого-либо набора.
    """
    key = ("sextuple", tuple(params))
    if key in ws.profiles:
        cached = ws.profiles[key]
        if cached is None:
            raise HalfspaceError("the sextuple sum leaves the half-space", params=list(params))
        return cached
    ctx = ws.ctx
    add, sub, mul, neg = ctx.add, ctx.sub, ctx.mul, ctx.neg
    dl = ctx.delta
    alpha, beta, eps = ctx.t_split(ell1_eigenvalue(ws, params))
    rep_of = ws.orbits.rep_of

    def s(*xs):
        out = 0
        for x in xs:
            out = add(out, x)
        return out

    counts: Counter = Counter()
    elems = range(ctx.q)
    for a, b, c, d, e, f in product(elems, repeat=6):
        bd, ae = mul(b, d), mul(a, e)
        bd_ae = sub(bd, ae)
        if bd_ae == 0:
            continue
        ab, ac, bc = mul(a, b), mul(a, c), mul(b, c)
        de = mul(d, e)
        a2, b2, d2, e2, f2 = mul(a, a), mul(b, b), mul(d, d), mul(e, e), mul(f, f)
        cde = mul(c, de)
        de_dl = mul(de, dl)
        x11 = s(mul(alpha, bd_ae), mul(beta, s(ab, cde, neg(mul(bd, f)))),
                mul(eps, s(mul(ac, e), neg(mul(ab, f)), neg(de_dl))))
        x21 = s(mul(beta, s(mul(mul(a, d), f), neg(a2), neg(mul(c, d2)))),
                mul(eps, s(mul(a2, f), neg(mul(ac, d)), mul(d2, dl))))
        x31 = s(mul(beta, d), mul(eps, a))
        x12 = s(mul(beta, s(mul(c, e2), neg(mul(mul(b, e), f)), b2)),
                mul(eps, s(mul(bc, e), neg(mul(b2, f)), neg(mul(e2, dl)))))
        x22 = s(mul(alpha, bd_ae), mul(beta, s(mul(ae, f), neg(cde), neg(ab))),
                mul(eps, s(mul(ab, f), neg(mul(bc, d)), de_dl)))
        x32 = s(mul(beta, e), mul(eps, b))
        # ε-слагаемые в x13 не напечатаны
        x13 = mul(beta, s(mul(mul(c, e), f), bc, neg(mul(b, f2)), neg(mul(e, dl))))
        x23 = s(mul(beta, s(mul(a, f2), neg(mul(mul(c, d), f)), neg(ac), mul(d, dl))),
                mul(eps, s(mul(ac, f), neg(mul(ac, c)), mul(mul(d, f), dl), neg(mul(a, dl)))))
        x33 = s(alpha, mul(beta, f), mul(eps, c))
        try:
            z = apply_to_base(ctx, (x11, x12, x13, x21, x22, x23, x31, x32, x33))
        except HalfspaceError:
            z = None
        if z is None or not is_valid_point(ctx, *z):
            ws.profiles[key] = None
            logger.info("Сумма x_ij для %s выходит из H_q при (a..f) = %s", params, (a, b, c, d, e, f))
            raise HalfspaceError("the sextuple sum leaves the half-space", params=list(params))
        counts[rep_of[z]] += 1
    profile = Profile(counts, Fraction(1))
    ws.profiles[key] = profile
    return profile


def orbital_sum_closed(
    ws: TraceWorkspace,
    f: SphericalFn,
    desc: ClassDescriptor,
    branch: Optional[str] = None,
) -> Fraction:
    """
    Замкнутая форма I_G(f, γ) для класса desc.

    Параметры desc задаются кодами элементов F_p (Γ-класс) или F_q (G-класс).
    Для эллиптических типов ветка выбирается по n; явный запрос
    неподходящей ветки дает WrongBranch.
    """
    ctx = ws.ctx
    kind, params = desc
    q = ws.q
    div = ctx.div
    if kind in (ClassKind.ELL1, ClassKind.ELL2):
        natural = natural_branch(ws, desc)
        if natural is None or (branch is not None and branch != natural):
            raise WrongBranch(
                f"branch {branch or '?'} is not available for {kind.value}{params} at n={ws.n}",
                kind=kind.value, branch=branch, n=ws.n,
            )
        branch = natural
    elif branch is not None:
        raise WrongBranch(f"{kind.value} has a single closed form", kind=kind.value, branch=branch, n=ws.n)

    if kind == ClassKind.CENTRAL:
        return _f_p0(ws, f)
    if kind == ClassKind.HYP1:
        a, b = params
        r = div(a, b)
        return _k_over_z(q) * horocycle_transform(ws, f, _diag2(r, r))
    if kind == ClassKind.HYP2:
        a, b, c = params
        return _k_over_z(q) * horocycle_transform(ws, f, _diag2(div(a, c), div(b, c)))
    if kind == ClassKind.PAR1:
        return _k_over_z(q) * (horocycle_transform(ws, f, _diag2(1, 1)) - _f_p0(ws, f))
    if kind == ClassKind.PAR2:
        return _k_over_z(q) * par2_sum(ws, f)
    if kind == ClassKind.PAR3:
        a, b = params
        r = div(a, b)
        return _k_over_z(q) * horocycle_transform(ws, f, (r, 1, 0, r))
    if kind == ClassKind.ELL1 and branch == ELL1_SPLIT:
        roots, _ = factor_linear(ctx, params + (1,), range(1, q))
        xi3 = min(roots)
        xi1 = ctx.frobenius(xi3)
        xi2 = ctx.frobenius(xi1)
        return _k_over_z(q) * horocycle_transform(ws, f, _diag2(div(xi1, xi3), div(xi2, xi3)))
    if kind == ClassKind.ELL1:
        return evaluate_profile(f, sextuple_profile(ws, params))
    if branch == ELL2_EVEN:
        u, v, m = params
        roots, _ = factor_linear(ctx, (v, u, 1), range(1, q))
        eta2 = min(roots)
        eta1 = ctx.frobenius(eta2)
        return _k_over_z(q) * horocycle_transform(ws, f, _diag2(div(eta1, m), div(eta2, m)))
    k, l, xi, m = ell2_parameters(ctx, desc)
    p = ws.p
    factor = Fraction((q ** 3 - 1) * (q * q - 1), (p - 1) * (p * p - 1))
    kappa = (div(k, m), div(ctx.mul(l, xi), m), div(l, m), div(k, m))
    return factor * horocycle_transform(ws, f, kappa)


def closed_form_status(ws: TraceWorkspace, f: SphericalFn, desc: ClassDescriptor) -> Tuple[Optional[Fraction], str]:
    """(значение, статус): ok, undefined (выход из H_q) или unavailable (нет формы)."""
    try:
        return orbital_sum_closed(ws, f, desc), "ok"
    except (WrongBranch, UnsupportedKind) as exc:
        logger.debug("Нет замкнутой формы для %s: %s", desc, exc)
        return None, "unavailable"
    except HalfspaceError:
        return None, "undefined"


# --- суммарные вклады типов ---

def _fp_units(ws: TraceWorkspace) -> range:
    return range(1, ws.p)


def total_contribution(ws: TraceWorkspace, f: SphericalFn, kind: ClassKind, variant: str = HYP2_MAIN) -> Optional[Fraction]:
    """
    Печатный суммарный вклад всех Γ-классов типа kind в геометрическую сторону.

    None для ell1 при 3 ∤ n (формула не приводится). Для hyp2 variant выбирает
    между множителем (q-1)²/(p-1)² (main) и (q-1)³/(p-1)³ (appendix).
    """
    ctx = ws.ctx
    p, q = ws.p, ws.q
    hf = lambda kappa: horocycle_transform(ws, f, kappa)  # noqa: E731
    others = [a for a in _fp_units(ws) if a != 1]
    if kind == ClassKind.CENTRAL:
        return Fraction(group_order(q), group_order(p)) * (p - 1) * _f_p0(ws, f)
    if kind == ClassKind.HYP1:
        factor = Fraction((q ** 3 - 1) * (q * q - 1) * (q * q - q), (p * p - 1) * (p * p - p))
        return factor * sum((hf(_diag2(a, a)) for a in others), Fraction(0))
    if kind == ClassKind.HYP2:
        power = 2 if variant == HYP2_MAIN else 3
        factor = Fraction((q ** 3 - 1) * (q - 1) ** power, 3 * (p - 1) ** power)
        return factor * sum((hf(_diag2(a, b)) for a, b in combinations(others, 2)), Fraction(0))
    if kind == ClassKind.PAR1:
        factor = Fraction(q ** 3 * (q ** 3 - 1) * (q - 1), p ** 3 * (p - 1))
        return factor * (hf(_diag2(1, 1)) - _f_p0(ws, f))
    if kind == ClassKind.PAR2:
        factor = Fraction(q ** 3 * (q - 1) ** 2, p ** 3 * (p - 1))
        return factor * _k_over_z(q) * par2_sum(ws, f)
    if kind == ClassKind.PAR3:
        factor = Fraction(q * (q - 1) * (q ** 3 - 1), p * (p - 1))
        return factor * sum((hf((c, 1, 0, c)) for c in others), Fraction(0))
    if kind == ClassKind.ELL1:
        if ws.n % 3:
            return None
        factor = Fraction((q - 1) ** 3 * (q ** 3 - 1), 3 * (p ** 3 - 1) * (q - 1))
        xis = [x for x in ctx.subfield_elements(3) if x >= p]
        return factor * sum((hf(_diag2(ctx.pow(x, p - 1), ctx.pow(x, p * p - 1))) for x in xis), Fraction(0))
    if kind == ClassKind.ELL2 and ws.n % 2 == 0:
        factor = Fraction((q - 1) ** 3 * (q ** 3 - 1), 2 * (p * p - 1) * (q - 1))
        etas = [x for x in ctx.subfield_elements(2) if x >= p]
        return factor * sum((hf(_diag2(x, ctx.frobenius(x))) for x in etas), Fraction(0))
    if kind == ClassKind.ELL2:
        xi = prime_nonsquare(ctx)
        if xi is None:
            raise WrongBranch("the odd quadratic elliptic total needs odd characteristic", kind=kind.value, n=ws.n)
        factor = Fraction((q ** 3 - 1) * (q * q - 1), p * p - 1)
        return factor * sum(
            (hf((s, ctx.mul(t, xi), t, s)) for s in range(p) for t in _fp_units(ws)),
            Fraction(0),
        )
    raise UnsupportedKind(f"no total contribution for {kind}", kind=str(kind))


def kind_contribution_oracle(ws: TraceWorkspace, f: SphericalFn, kind: ClassKind) -> Fraction:
    """Σ |G_γ|/|Γ_γ|·I_G(f, γ) по Γ-классам типа kind (оракулы)."""
    total = Fraction(0)
    for cls in ws.gamma_classes:
        if cls.descriptor.kind != kind:
            continue
        rep = cls.representative
        weight = Fraction(ws.centralizer_order(rep, FieldLevel.FQ), ws.centralizer_order(rep, FieldLevel.FP))
        total += weight * orbital_sum_oracle(ws, f, rep)
    return total


def compare_total_contributions(ws: TraceWorkspace, f: SphericalFn, ledger: Optional[Ledger] = None) -> List[TotalRow]:
    """Сравнить печатные суммарные вклады с оракулом по каждому типу."""
    rows: List[TotalRow] = []
    for kind in ClassKind:
        variants = [HYP2_MAIN, HYP2_APPENDIX] if kind == ClassKind.HYP2 else [HYP2_MAIN]
        oracle = kind_contribution_oracle(ws, f, kind)
        for variant in variants:
            label = variant if kind == ClassKind.HYP2 else orbital_location(kind, ws.n).rsplit(".", 1)[-1]
            try:
                closed = total_contribution(ws, f, kind, variant)
            except WrongBranch:
                closed = None
            match = None if closed is None else closed == oracle
            if match is False:
                record_discrepancy(
                    ledger, f"total_contribution.{kind.value}.{label}", closed, oracle, function=f.name,
                )
            rows.append(TotalRow(kind.value, label, closed, oracle, match))
    return rows
