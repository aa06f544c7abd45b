"""
Сервис для построения башни конечных полей F_p ⊂ F_q ⊂ F_q(δ^{1/3}) и работы с характерами.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from sympy import Poly, factorint, isprime, symbols

from config.settings import settings
from gl3trace.exceptions import (
    BudgetExceeded,
    LevelMismatch,
    NotASubgroup,
    NotCongruent1Mod3,
    NotPrime,
    ReduciblePolynomial,
)
from gl3trace.models.field import FieldCtx, FieldElem, FieldLevel, MultChar

logger = logging.getLogger(__name__)

DELTA_RULES = ("first-nonresidue", "generator")

_x = symbols("x")


# --- многочлены над F_p (коэффициенты младшими первыми) ---

def _poly_mulmod(a: Sequence[int], b: Sequence[int], modulus: Sequence[int], p: int) -> List[int]:
    """Произведение a·b по модулю монического многочлена modulus."""
    n = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for k in range(len(prod) - 1, n - 1, -1):
        c = prod[k]
        if c:
            for i in range(n + 1):
                prod[k - n + i] = (prod[k - n + i] - c * modulus[i]) % p
    out = prod[:n] + [0] * max(0, n - len(prod))
    return out


def _poly_pow(a: Sequence[int], k: int, modulus: Sequence[int], p: int) -> List[int]:
    n = len(modulus) - 1
    result = [1] + [0] * (n - 1)
    base = list(a)
    while k:
        if k & 1:
            result = _poly_mulmod(result, base, modulus, p)
        base = _poly_mulmod(base, base, modulus, p)
        k >>= 1
    return result


def _has_root(poly: Sequence[int], p: int) -> bool:
    for r in range(p):
        value = 0
        for c in reversed(poly):
            value = (value * r + c) % p
        if value == 0:
            return True
    return False


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Неприводимость монического многочлена над F_p."""
    n = len(poly) - 1
    if n == 1:
        return True
    if n <= 3:
        return not _has_root(poly, p)
    return Poly(list(reversed(poly)), _x, modulus=p).is_irreducible


def _code_digits(code: int, p: int, n: int) -> List[int]:
    out = []
    for _ in range(n):
        code, r = divmod(code, p)
        out.append(r)
    return out


def smallest_irreducible(p: int, n: int) -> Tuple[int, ...]:
    """Лексикографически наименьший монический неприводимый многочлен степени n."""
    for code in range(p ** n):
        poly = tuple(_code_digits(code, p, n)) + (1,)
        if is_irreducible(poly, p):
            return poly
    raise ReduciblePolynomial(f"no irreducible polynomial of degree {n} over F_{p}")


# --- построение полей ---

def build_prime_field(p: int) -> FieldCtx:
    """Построить F_p."""
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise NotPrime(f"{p} is not prime", p=p)
    return _build_field(p, 1, (0, 1))


def build_extension(base: FieldCtx, n: int, poly: Optional[Sequence[int]] = None) -> FieldCtx:
    """
    Построить F_q = F_p[x]/(poly), q = p^n.

    Если poly не задан, берется лексикографически наименьший неприводимый.
    """
    p = base.p
    if n < 1:
        raise ValueError("n must be positive")
    if poly is None:
        poly = smallest_irreducible(p, n)
    else:
        poly = tuple(c % p for c in poly)
        if len(poly) != n + 1 or poly[-1] != 1:
            raise ReduciblePolynomial(f"polynomial {list(poly)} is not monic of degree {n}", poly=list(poly))
        if not is_irreducible(poly, p):
            raise ReduciblePolynomial(f"polynomial {list(poly)} is reducible over F_{p}", poly=list(poly))
    return _build_field(p, n, tuple(poly))


def _build_field(p: int, n: int, poly: Tuple[int, ...]) -> FieldCtx:
    q = p ** n
    if q > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("field tables", q, settings.ENUMERATION_BUDGET)
    order = q - 1
    primes = list(factorint(order)) if order > 1 else []

    def code_of(ds: Sequence[int]) -> int:
        code = 0
        for d in reversed(ds):
            code = code * p + d
        return code

    generator = None
    for g in range(1, q):
        g_digits = _code_digits(g, p, n)
        one = [1] + [0] * (n - 1)
        if all(_poly_pow(g_digits, order // r, poly, p) != one for r in primes):
            generator = g
            break
    if generator is None:
        raise ReduciblePolynomial(f"no generator found for poly {list(poly)}", poly=list(poly))

    exp_table = [0] * order
    log_table = [0] * q
    g_digits = _code_digits(generator, p, n)
    current = [1] + [0] * (n - 1)
    for k in range(order):
        code = code_of(current)
        exp_table[k] = code
        log_table[code] = k
        current = _poly_mulmod(current, g_digits, poly, p)
    if code_of(current) != 1:
        raise ReduciblePolynomial(f"generator order check failed for poly {list(poly)}", poly=list(poly))

    ctx = FieldCtx(p, n, poly, generator, exp_table, log_table)
    logger.info("Построено поле F_%s: p=%s n=%s poly=%s generator=%s", q, p, n, list(poly), generator)
    return ctx


def find_cube_nonresidue(ctx: FieldCtx, rule: str = "first-nonresidue") -> int:
    """
    Найти кубический невычет δ ∈ F_q.

    first-nonresidue: наименьший по коду невычет; generator: первый невычет
    в порядке g⁰, g¹, g², ….
    """
    if ctx.q % 3 != 1:
        raise NotCongruent1Mod3(f"q={ctx.q} is not congruent to 1 mod 3", q=ctx.q)
    if rule == "generator":
        candidates = (ctx.exp(k) for k in range(ctx.order))
    elif rule == "first-nonresidue":
        candidates = iter(ctx.units())
    else:
        raise ValueError(f"unknown delta rule {rule!r}")
    for a in candidates:
        if ctx.pow(a, ctx.order // 3) != 1:
            return a
    raise NotCongruent1Mod3(f"no cube nonresidue in F_{ctx.q}", q=ctx.q)


def first_nonsquare(ctx: FieldCtx) -> Optional[int]:
    """Наименьший по коду неквадрат F_q (None при p = 2)."""
    if ctx.p == 2:
        return None
    for a in ctx.units():
        if not ctx.is_square(a):
            return a
    return None


def build_cubic_tower(ctx: FieldCtx, rule: str = "first-nonresidue") -> FieldCtx:
    """Построить F_q(δ^{1/3}) ≅ F_{q³} поверх F_q."""
    delta = find_cube_nonresidue(ctx, rule)
    top_size = ctx.q ** 3
    if top_size > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("cubic tower tables", top_size, settings.ENUMERATION_BUDGET)

    tower = FieldCtx(ctx.p, ctx.n, ctx.poly, ctx.generator, ctx._exp, ctx._log)
    tower.delta = delta
    order = top_size - 1
    primes = list(factorint(order))

    def slow_pow(x: int, k: int) -> int:
        result, base = 1, x
        while k:
            if k & 1:
                result = tower.t_mul_schoolbook(result, base)
            base = tower.t_mul_schoolbook(base, base)
            k >>= 1
        return result

    top_generator = next(
        g for g in range(2, top_size)
        if all(slow_pow(g, order // r) != 1 for r in primes)
    )
    t_exp = [0] * order
    t_log = [0] * top_size
    current = 1
    for k in range(order):
        t_exp[k] = current
        t_log[current] = k
        current = tower.t_mul_schoolbook(current, top_generator)
    tower.top_generator = top_generator
    tower._t_exp = t_exp
    tower._t_log = t_log

    # Фробениус x ↦ x^q имеет порядок 3 на верхнем уровне
    g1 = tower.t_frobenius(top_generator)
    if g1 == top_generator or tower.t_frobenius(tower.t_frobenius(g1)) != top_generator:
        raise ReduciblePolynomial(f"x^3 - {delta} does not define a cubic extension", delta=delta)

    logger.info("Построена башня F_%s(δ^(1/3)): delta=%s top_generator=%s", ctx.q, delta, top_generator)
    return tower


def build_field(p: int, n: int, poly: Optional[Sequence[int]] = None, delta_rule: str = "first-nonresidue",
                with_tower: bool = True) -> FieldCtx:
    """Построить F_q и, если q ≡ 1 (mod 3) и with_tower, кубическую башню."""
    ctx = build_extension(build_prime_field(p), n, poly)
    if with_tower:
        ctx = build_cubic_tower(ctx, delta_rule)
    return ctx


# --- норма ---

_LEVEL_RANK = {FieldLevel.FP: 0, FieldLevel.FQ: 1, FieldLevel.FQ3: 2}


def norm(ctx: FieldCtx, x: FieldElem, to_level: FieldLevel) -> FieldElem:
    """Норма элемента x на уровень to_level (ниже уровня x)."""
    if _LEVEL_RANK[to_level] >= _LEVEL_RANK[x.level]:
        raise LevelMismatch(f"cannot take norm from {x.level.value} to {to_level.value}")
    code = ctx.from_elem(x)
    if x.level == FieldLevel.FQ3:
        q = ctx.q
        code = ctx.t_pow(code, 1 + q + q * q)
        if to_level == FieldLevel.FQ:
            return ctx.to_elem(code, FieldLevel.FQ)
    code = ctx.pow(code, (ctx.q - 1) // (ctx.p - 1))
    return ctx.to_elem(code, FieldLevel.FP)


def norm_to_subfield(ctx: FieldCtx, a: int, k: int) -> int:
    """Норма из F_q в F_{p^k} (k | n) через показатель (q-1)/(p^k-1)."""
    if ctx.n % k:
        raise LevelMismatch(f"F_{ctx.p}^{k} is not a subfield of F_{ctx.q}")
    return ctx.pow(a, (ctx.q - 1) // (ctx.p ** k - 1))


# --- характеры ---

def char_restriction_trivial(c: MultChar, to_subgroup_order: int) -> bool:
    """Ограничение характера на подгруппу порядка d тривиально ⇔ d | exponent."""
    if to_subgroup_order <= 0 or c.modulus % to_subgroup_order:
        raise NotASubgroup(
            f"{to_subgroup_order} does not divide {c.modulus}",
            order=to_subgroup_order,
            modulus=c.modulus,
        )
    return c.exponent % to_subgroup_order == 0


def char_restriction_trivial_bruteforce(c: MultChar, to_subgroup_order: int) -> bool:
    """Та же проверка перебором элементов подгруппы g^{(N/d)k}."""
    if to_subgroup_order <= 0 or c.modulus % to_subgroup_order:
        raise NotASubgroup(
            f"{to_subgroup_order} does not divide {c.modulus}",
            order=to_subgroup_order,
            modulus=c.modulus,
        )
    step = c.modulus // to_subgroup_order
    return all((c.exponent * step * k) % c.modulus == 0 for k in range(to_subgroup_order))


def restricted_exponent(c: MultChar, to_subgroup_order: int) -> int:
    """Показатель ограничения характера на подгруппу порядка d (по согласованному генератору)."""
    if c.modulus % to_subgroup_order:
        raise NotASubgroup(f"{to_subgroup_order} does not divide {c.modulus}")
    return c.exponent % to_subgroup_order
