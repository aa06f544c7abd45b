"""
Сервис для работы с конечным верхним полупространством H_q:
действие GL₃(F_q), базовая точка p₀, стабилизатор K и K-орбиты.
"""
import logging
from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from config.settings import settings
from gl3trace.exceptions import BudgetExceeded, DenominatorZero, HalfspaceError
from gl3trace.models.conjugacy import Mat
from gl3trace.models.field import FieldCtx, FieldLevel
from gl3trace.models.halfspace import AffineRep, HPoint, OrbitTable
from gl3trace.services.gl3_service import group_order, level_generators, mat_mul

logger = logging.getLogger(__name__)


def halfspace_size(q: int) -> int:
    """|H_q| = (q²-1)(q-1)q³."""
    return (q * q - 1) * (q - 1) * q ** 3


def is_valid_point(ctx: FieldCtx, alpha: int, beta: int) -> bool:
    """α₂β₃ - α₃β₂ ≠ 0."""
    _, a2, a3 = ctx.t_split(alpha)
    _, b2, b3 = ctx.t_split(beta)
    return ctx.sub(ctx.mul(a2, b3), ctx.mul(a3, b2)) != 0


def make_point(ctx: FieldCtx, alpha: int, beta: int) -> HPoint:
    if not is_valid_point(ctx, alpha, beta):
        raise HalfspaceError(f"({alpha}, {beta}) is not a point of H_q", alpha=alpha, beta=beta)
    return HPoint(alpha, beta)


def base_point(ctx: FieldCtx) -> HPoint:
    """p₀ = (δ^{2/3}, δ^{1/3})."""
    return HPoint(ctx.t_join(0, 0, 1), ctx.t_join(0, 1, 0))


def apply_to_base(ctx: FieldCtx, m: Mat) -> HPoint:
    """m·p₀ для обратимой m над F_q."""
    join = ctx.t_join
    den = join(m[8], m[7], m[6])
    if den == 0:
        raise DenominatorZero(f"zero denominator for {m}")
    return HPoint(ctx.t_div(join(m[2], m[1], m[0]), den), ctx.t_div(join(m[5], m[4], m[3]), den))


def act(ctx: FieldCtx, g: Mat, z: HPoint) -> HPoint:
    """Дробно-линейное действие g·(α, β)."""
    alpha, beta = z
    t_add, t_mul = ctx.t_add, ctx.t_mul
    den = t_add(t_add(t_mul(g[6], alpha), t_mul(g[7], beta)), g[8])
    if den == 0:
        raise DenominatorZero(f"zero denominator acting by {g} on {z}")
    num_a = t_add(t_add(t_mul(g[0], alpha), t_mul(g[1], beta)), g[2])
    num_b = t_add(t_add(t_mul(g[3], alpha), t_mul(g[4], beta)), g[5])
    out = HPoint(ctx.t_div(num_a, den), ctx.t_div(num_b, den))
    if not is_valid_point(ctx, *out):
        raise HalfspaceError(f"action of {g} left H_q at {z}")
    return out


def point_to_affine(ctx: FieldCtx, z: HPoint) -> AffineRep:
    """Аффинный представитель A_z с A_z·p₀ = z."""
    a1, a2, a3 = ctx.t_split(z.alpha)
    b1, b2, b3 = ctx.t_split(z.beta)
    return AffineRep(a3, a2, a1, b3, b2, b1)


def affine_to_point(ctx: FieldCtx, rep: AffineRep) -> HPoint:
    return apply_to_base(ctx, rep.as_matrix())


def act_via_affine(ctx: FieldCtx, g: Mat, z: HPoint) -> HPoint:
    """g·z = (g·A_z)·p₀."""
    return apply_to_base(ctx, mat_mul(ctx, g, point_to_affine(ctx, z).as_matrix()))


def enumerate_halfspace(ctx: FieldCtx) -> Iterator[HPoint]:
    """Все точки H_q в порядке кодов (α, β)."""
    size = halfspace_size(ctx.q)
    if size > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("half-space enumeration", size, settings.ENUMERATION_BUDGET)
    top = range(ctx.top_size)
    for alpha in top:
        for beta in top:
            if is_valid_point(ctx, alpha, beta):
                yield HPoint(alpha, beta)


# --- стабилизатор K ---

def k_matrix(ctx: FieldCtx, lam: int) -> Mat:
    """Элемент K, соответствующий λ = a + b·t + c·t² ∈ F_{q³}^×."""
    a, b, c = ctx.t_split(lam)
    d = ctx.delta
    cd, bd = ctx.mul(c, d), ctx.mul(b, d)
    return (a, cd, bd, b, a, cd, c, b, a)


def stabilizer_K(ctx: FieldCtx) -> List[Mat]:
    """K = stab(p₀) ≅ F_q(δ^{1/3})^× (q³-1 матриц)."""
    return [k_matrix(ctx, lam) for lam in range(1, ctx.top_size)]


def k_mod_center(ctx: FieldCtx) -> List[Mat]:
    """Представители K/Z: λ со старшей ненулевой координатой 1."""
    out = []
    for lam in range(1, ctx.top_size):
        coords = ctx.t_split(lam)
        lead = next(c for c in reversed(coords) if c)
        if lead == 1:
            out.append(k_matrix(ctx, lam))
    return out


def stabilizer_bruteforce(ctx: FieldCtx, elements: Iterable[Mat]) -> List[Mat]:
    """Элементы из elements, фиксирующие p₀."""
    p0 = base_point(ctx)
    return [g for g in elements if apply_to_base(ctx, g) == p0]


# --- K-орбиты ---

def point_key(ctx: FieldCtx, z: HPoint) -> Tuple[int, ...]:
    """Лексикографический ключ (α₁..β₃), элементы упорядочены: ноль, затем по показателю генератора."""
    key = ctx.order_key
    a1, a2, a3 = ctx.t_split(z.alpha)
    b1, b2, b3 = ctx.t_split(z.beta)
    return key(a1), key(a2), key(a3), key(b1), key(b2), key(b3)


def canonical_K_orbit_rep(ctx: FieldCtx, z: HPoint, k_reps: Optional[Sequence[Mat]] = None) -> HPoint:
    """Минимальная по point_key точка K-орбиты z."""
    k_reps = k_reps if k_reps is not None else k_mod_center(ctx)
    return min((act(ctx, k, z) for k in k_reps), key=lambda w: point_key(ctx, w))


def build_orbit_table(ctx: FieldCtx) -> OrbitTable:
    """Разбить H_q на K-орбиты; представители отсортированы по point_key."""
    k_reps = k_mod_center(ctx)
    rep_of: Dict[HPoint, HPoint] = {}
    sizes: Dict[HPoint, int] = {}
    for z in enumerate_halfspace(ctx):
        if z in rep_of:
            continue
        orbit = {act(ctx, k, z) for k in k_reps}
        rep = min(orbit, key=lambda w: point_key(ctx, w))
        for w in orbit:
            rep_of[w] = rep
        sizes[rep] = len(orbit)
    reps = sorted(sizes, key=lambda w: point_key(ctx, w))
    logger.info("H_%s: %s точек, %s K-орбит", ctx.q, len(rep_of), len(reps))
    return OrbitTable(rep_of, sizes, reps)


def k_orbit_count_formula(q: int) -> int:
    """Число K-орбит на H_q: (|H_q| + 3(q²+q)) / (q²+q+1)."""
    return (halfspace_size(q) + 3 * (q * q + q)) // (q * q + q + 1)


# --- орбиты подгрупп ---

def subgroup_orbits(ctx: FieldCtx, elements: Sequence[Mat], points: Iterable[HPoint]) -> Dict[HPoint, int]:
    """Номер орбиты каждой точки под действием подгруппы, заданной списком элементов."""
    label: Dict[HPoint, int] = {}
    next_label = 0
    for z in points:
        if z in label:
            continue
        for g in elements:
            label[act(ctx, g, z)] = next_label
        next_label += 1
    return label


def gamma_orbit_count(ctx: FieldCtx) -> int:
    """Число Γ-орбит на H_q (Γ = GL₃(F_p)) обходом по порождающим."""
    generators = level_generators(ctx, FieldLevel.FP)
    seen = set()
    orbits = 0
    for z in enumerate_halfspace(ctx):
        if z in seen:
            continue
        orbits += 1
        seen.add(z)
        queue = deque([z])
        while queue:
            w = queue.popleft()
            for s in generators:
                nxt = act(ctx, s, w)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return orbits


def check_orbit_stabilizer(ctx: FieldCtx) -> bool:
    """|G| = |K|·|H_q|."""
    return group_order(ctx.q) == (ctx.q ** 3 - 1) * halfspace_size(ctx.q)
