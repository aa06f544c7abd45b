"""
Сервис геометрической стороны формулы следа.

Сферические функции, преобразование орицикла Hf, оракулы орбитальных
сумм и прямого следа, сборка геометрической стороны по Γ-классам.
Суммы по точкам H_q накапливаются в профили (счетчики по K-орбитам),
которые кэшируются в рабочем пространстве и переиспользуются для всех f.
"""
import logging
import random
import time
from collections import Counter, deque
from fractions import Fraction
from typing import List, Optional, Set, Tuple

from config.settings import settings
from gl3trace.exceptions import BudgetExceeded, SingularKappa
from gl3trace.models.conjugacy import Mat
from gl3trace.models.field import FieldLevel
from gl3trace.models.geometric import GeometricSide, GeomTerm, Profile
from gl3trace.models.ledger import Ledger
from gl3trace.models.spherical import SphericalFn
from gl3trace.services.gl3_service import (
    IDENTITY,
    centralizer_elements,
    classify,
    conjugation_orbit,
    det,
    enumerate_gl3,
    group_order,
    mat_inv,
    mat_mul,
)
from gl3trace.services.halfspace_service import apply_to_base, halfspace_size, k_matrix
from gl3trace.services.ledger_service import record_discrepancy
from gl3trace.services.workspace_service import TraceWorkspace

logger = logging.getLogger(__name__)

# 2×2 матрица (k11, k12, k21, k22)
Kappa = Tuple[int, int, int, int]


# --- сферические функции ---

def constant_fn(value: int = 1) -> SphericalFn:
    return SphericalFn(f"constant-{value}", constant=Fraction(value))


def delta_fn(ws: TraceWorkspace) -> SphericalFn:
    """Индикатор K-орбиты p₀ (то есть K в G)."""
    return SphericalFn("delta-p0", values={ws.rep_of(ws.p0): Fraction(1)}, orbits=ws.orbits)


def random_spherical_fn(ws: TraceWorkspace, seed: int) -> SphericalFn:
    """Случайная рациональная функция на K-орбитах, воспроизводимая по seed."""
    rng = random.Random(seed)
    values = {rep: Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for rep in ws.orbits.reps}
    return SphericalFn(f"random-{seed}", values=values, orbits=ws.orbits)


def f_at_matrix(ws: TraceWorkspace, f: SphericalFn, g: Mat) -> Fraction:
    """f(g) = f(g·p₀)."""
    if f.is_constant:
        return f.constant
    return f.at_point(apply_to_base(ws.ctx, g))


def random_invertible(ws: TraceWorkspace, rng: random.Random) -> Mat:
    ctx = ws.ctx
    while True:
        m = tuple(rng.randrange(ctx.q) for _ in range(9))
        if det(ctx, m):
            return m


def check_bi_invariance(ws: TraceWorkspace, f: SphericalFn, samples: int = 100, seed: int = 0) -> bool:
    """f(k·x·h) = f(x) для случайных k, h ∈ K и x ∈ G."""
    rng = random.Random(seed)
    ctx = ws.ctx
    for _ in range(samples):
        x = random_invertible(ws, rng)
        k = k_matrix(ctx, rng.randrange(1, ctx.top_size))
        h = k_matrix(ctx, rng.randrange(1, ctx.top_size))
        if f_at_matrix(ws, f, mat_mul(ctx, mat_mul(ctx, k, x), h)) != f_at_matrix(ws, f, x):
            logger.error("Нарушена биинвариантность %s в точке %s", f.name, x)
            return False
    return True


def evaluate_profile(f: SphericalFn, profile: Profile) -> Fraction:
    if f.is_constant:
        return profile.scale * f.constant * sum(profile.counts.values())
    at_rep = f.at_rep
    return profile.scale * sum((count * at_rep(rep) for rep, count in profile.counts.items()), Fraction(0))


# --- преобразование орицикла ---

def gl2_mul(ctx, x: Kappa, y: Kappa) -> Kappa:
    add, mul = ctx.add, ctx.mul
    a, b, c, d = x
    e, f, g, h = y
    return (
        add(mul(a, e), mul(b, g)), add(mul(a, f), mul(b, h)),
        add(mul(c, e), mul(d, g)), add(mul(c, f), mul(d, h)),
    )


def gl2_det(ctx, k: Kappa) -> int:
    return ctx.sub(ctx.mul(k[0], k[3]), ctx.mul(k[1], k[2]))


def gl2_class(ws: TraceWorkspace, kappa: Kappa) -> List[Kappa]:
    """Класс сопряженности κ в GL₂(F_q) обходом по порождающим."""
    kappa = tuple(kappa)
    cached = ws.gl2_classes.get(kappa)
    if cached is not None:
        return cached
    ctx = ws.ctx
    if gl2_det(ctx, kappa) == 0:
        raise SingularKappa(f"kappa {kappa} is singular", kappa=list(kappa))
    one, minus_one = 1, ctx.neg(1)
    g = ctx.generator
    conjugators = [
        ((1, minus_one, 0, 1), (1, one, 0, 1)),
        ((1, 0, minus_one, 1), (1, 0, one, 1)),
    ]
    if g != 1:
        conjugators.append(((ctx.inv(g), 0, 0, 1), (g, 0, 0, 1)))
    seen = {kappa}
    queue = deque([kappa])
    while queue:
        x = queue.popleft()
        for s_inv, s in conjugators:
            y = gl2_mul(ctx, gl2_mul(ctx, s_inv, x), s)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    members = sorted(seen)
    for member in members:
        ws.gl2_classes[member] = members
    return members


def horocycle_profile(ws: TraceWorkspace, kappa: Kappa) -> Profile:
    key = ("horocycle", tuple(kappa))
    if key in ws.profiles:
        return ws.profiles[key]
    ctx = ws.ctx
    rep_of = ws.orbits.rep_of
    elems = range(ctx.q)
    counts: Counter = Counter()
    for a, b, c, d in gl2_class(ws, kappa):
        for x in elems:
            for y in elems:
                counts[rep_of[apply_to_base(ctx, (a, b, x, c, d, y, 0, 0, 1))]] += 1
    profile = Profile(counts, Fraction(1))
    ws.profiles[key] = profile
    return profile


def horocycle_transform(ws: TraceWorkspace, f: SphericalFn, kappa: Kappa) -> Fraction:
    """
    Hf(κ) = Σ_{x,y ∈ F_q} Σ_{ξ ~ κ} f([[ξ₁₁, ξ₁₂, x], [ξ₂₁, ξ₂₂, y], [0, 0, 1]]·p₀).

    Для постоянной f сумма равна значению, умноженному на q²·|класс κ|.
    """
    if f.is_constant:
        value = f.constant * ws.q * ws.q * len(gl2_class(ws, kappa))
    else:
        value = evaluate_profile(f, horocycle_profile(ws, kappa))
    if ws.hf_trace is not None:
        ws.hf_trace.append((tuple(kappa), value))
    return value


# --- оракулы орбитальных сумм ---

def orbital_method(ws: TraceWorkspace, gamma: Mat) -> str:
    """orbit, если класс не больше H_q, иначе halfspace."""
    class_size = group_order(ws.q) // ws.centralizer_order(gamma, FieldLevel.FQ)
    return "orbit" if class_size <= halfspace_size(ws.q) else "halfspace"


def class_profile(ws: TraceWorkspace, gamma: Mat, method: str = "auto") -> Profile:
    """
    Профиль орбитальной суммы I_G(·, γ).

    orbit: сумма по сопряженным γ' класса γ.
    halfspace: I_G(f, γ) = |K|/|G_γ| · Σ_{w ∈ H_q} f(A_w⁻¹·γ·A_w), так как G = A·K
    с однозначным разложением и f K-биинвариантна.
    """
    if method == "auto":
        method = orbital_method(ws, gamma)
    key = ("class", gamma, method)
    if key in ws.profiles:
        return ws.profiles[key]
    ctx = ws.ctx
    rep_of = ws.orbits.rep_of
    started = time.monotonic()
    counts: Counter = Counter()
    if method == "orbit":
        for conj in conjugation_orbit(ctx, gamma, FieldLevel.FQ):
            counts[rep_of[apply_to_base(ctx, conj)]] += 1
        scale = Fraction(1)
    elif method == "halfspace":
        for a, a_inv in ws.affine_pairs:
            counts[rep_of[apply_to_base(ctx, mat_mul(ctx, a_inv, mat_mul(ctx, gamma, a)))]] += 1
        scale = Fraction(ws.q ** 3 - 1, ws.centralizer_order(gamma, FieldLevel.FQ))
    else:
        raise ValueError(f"unknown orbital method {method!r}")
    profile = Profile(counts, scale)
    ws.profiles[key] = profile
    logger.debug("Профиль класса %s (%s) за %.2f с", gamma, method, time.monotonic() - started)
    return profile


def orbital_sum_oracle(ws: TraceWorkspace, f: SphericalFn, gamma: Mat, method: str = "auto") -> Fraction:
    """I_G(f, γ) перебором: сумма f по классу сопряженности γ в G."""
    return evaluate_profile(f, class_profile(ws, gamma, method))


def orbital_sum_by_cosets(ws: TraceWorkspace, f: SphericalFn, gamma: Mat) -> Fraction:
    """I_G(f, γ) = Σ_{s ∈ G_γ\\G} f(s⁻¹γs) по трансверсали правых смежных классов G_γ."""
    ctx = ws.ctx
    cost = group_order(ws.q)
    if cost > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("centralizer coset enumeration", cost, settings.ENUMERATION_BUDGET)
    centralizer = centralizer_elements(ctx, gamma, FieldLevel.FQ)
    covered: Set[Mat] = set()
    total = Fraction(0)
    for s in enumerate_gl3(ctx, FieldLevel.FQ):
        if s in covered:
            continue
        covered.update(mat_mul(ctx, c, s) for c in centralizer)
        total += f_at_matrix(ws, f, mat_mul(ctx, mat_inv(ctx, s), mat_mul(ctx, gamma, s)))
    return total


def direct_trace_profile(ws: TraceWorkspace) -> Profile:
    """Профиль Σ_{x ∈ Γ\\G} Σ_{γ ∈ Γ} f(x⁻¹γx)."""
    key = ("direct",)
    if key in ws.profiles:
        return ws.profiles[key]
    ctx = ws.ctx
    transversal = ws.transversal
    cost = len(transversal) * group_order(ws.p)
    if cost > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("direct trace", cost, settings.ENUMERATION_BUDGET)
    rep_of = ws.orbits.rep_of
    started = time.monotonic()
    counts: Counter = Counter()
    if transversal == [IDENTITY]:
        for g in enumerate_gl3(ctx, FieldLevel.FP):
            counts[rep_of[apply_to_base(ctx, g)]] += 1
    else:
        gamma = ws.gamma_elements
        for x in transversal:
            x_inv = mat_inv(ctx, x)
            for g in gamma:
                counts[rep_of[apply_to_base(ctx, mat_mul(ctx, x_inv, mat_mul(ctx, g, x)))]] += 1
    profile = Profile(counts, Fraction(1))
    ws.profiles[key] = profile
    logger.info("Прямой след: %s вычислений за %.1f с", cost, time.monotonic() - started)
    return profile


def direct_trace_oracle(ws: TraceWorkspace, f: SphericalFn) -> Fraction:
    return evaluate_profile(f, direct_trace_profile(ws))


# --- геометрическая сторона ---

def geometric_side(ws: TraceWorkspace, f: SphericalFn, ledger: Optional[Ledger] = None) -> GeometricSide:
    """
    Σ по Γ-классам |G_γ|/|Γ_γ|·I_G(f, γ) с весами по оракульным централизаторам,
    замкнутыми формами рядом и сравнением с прямым следом.
    """
    from gl3trace.services import closed_form_service

    ctx = ws.ctx
    rows: List[GeomTerm] = []
    oracle_total = Fraction(0)
    closed_total: Optional[Fraction] = Fraction(0)
    for cls in ws.gamma_classes:
        rep = cls.representative
        desc = cls.descriptor
        g_desc = classify(ctx, rep, FieldLevel.FQ)
        cent_g = ws.centralizer_order(rep, FieldLevel.FQ)
        cent_gamma = ws.centralizer_order(rep, FieldLevel.FP)
        claimed_g = closed_form_service.claimed_centralizer_order(g_desc.kind, ws.q)
        claimed_gamma = closed_form_service.claimed_centralizer_order(desc.kind, ws.p)
        for level, claimed, actual, kind in (
            ("G", claimed_g, cent_g, g_desc.kind), ("Gamma", claimed_gamma, cent_gamma, desc.kind),
        ):
            if claimed != actual:
                record_discrepancy(
                    ledger, f"centralizer_order.{kind.value}", claimed, actual, level=level, q=ws.q if level == "G" else ws.p,
                )
        weight = Fraction(cent_g, cent_gamma)
        oracle = orbital_sum_oracle(ws, f, rep)
        closed, status = closed_form_service.closed_form_status(ws, f, desc)
        match = None if closed is None else closed == oracle
        if match is False or status == "undefined":
            record_discrepancy(
                ledger,
                closed_form_service.orbital_location(desc.kind, ws.n),
                closed if closed is not None else status,
                oracle,
                function=f.name,
                params=list(desc.params),
            )
        oracle_total += weight * oracle
        if closed is None or closed_total is None:
            closed_total = None
        else:
            closed_total += weight * closed
        rows.append(GeomTerm(
            desc, rep, g_desc, cent_g, cent_gamma, claimed_g, claimed_gamma,
            weight, oracle, closed, status, match,
        ))
    direct = direct_trace_oracle(ws, f)
    side = GeometricSide(f.name, rows, oracle_total, closed_total, direct)
    logger.info(
        "Геометрическая сторона %s: классы=%s, оракул=%s, прямой след=%s",
        f.name, len(rows), oracle_total, direct,
    )
    if not side.chain_holds:
        logger.error("Сумма орбитальных сумм не совпала с прямым следом для %s", f.name)
    return side
