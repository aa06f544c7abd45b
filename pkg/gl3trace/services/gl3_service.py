"""
Сервис для работы с GL₃ над F_p и F_q: арифметика, классификация классов
сопряженности, орбиты сопряжения, централизаторы и смежные классы.
"""
import logging
from collections import Counter, deque
from itertools import combinations, product
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from config.settings import settings
from gl3trace.exceptions import BudgetExceeded, LevelMismatch, Singular, UnsupportedKind
from gl3trace.models.conjugacy import ClassData, ClassDescriptor, ClassKind, Mat
from gl3trace.models.field import FieldCtx, FieldLevel
from gl3trace.services.gf_tower_service import first_nonsquare

logger = logging.getLogger(__name__)

IDENTITY: Mat = (1, 0, 0, 0, 1, 0, 0, 0, 1)


# --- порядки групп ---

def group_order(q: int) -> int:
    """|GL₃(F_q)| = (q³-1)(q³-q)(q³-q²)."""
    return (q ** 3 - 1) * (q ** 3 - q) * (q ** 3 - q * q)


def gl2_order(q: int) -> int:
    return (q * q - 1) * (q * q - q)


def level_size(ctx: FieldCtx, level: FieldLevel) -> int:
    if level == FieldLevel.FP:
        return ctx.p
    if level == FieldLevel.FQ:
        return ctx.q
    raise LevelMismatch("GL3 is only built over Fp or Fq")


def level_elements(ctx: FieldCtx, level: FieldLevel) -> range:
    return range(level_size(ctx, level))


def level_units(ctx: FieldCtx, level: FieldLevel) -> range:
    return range(1, level_size(ctx, level))


def level_generator(ctx: FieldCtx, level: FieldLevel) -> int:
    """Генератор мультипликативной группы уровня."""
    if level == FieldLevel.FQ:
        return ctx.generator
    return ctx.exp((ctx.q - 1) // (ctx.p - 1)) if ctx.p > 2 else 1


def matrix_level(ctx: FieldCtx, m: Mat) -> FieldLevel:
    return FieldLevel.FP if all(x < ctx.p for x in m) else FieldLevel.FQ


# --- арифметика ---

def scalar(a: int) -> Mat:
    return (a, 0, 0, 0, a, 0, 0, 0, a)


def diag(a: int, b: int, c: int) -> Mat:
    return (a, 0, 0, 0, b, 0, 0, 0, c)


def elementary(i: int, j: int) -> Mat:
    """E_ij(1)."""
    return tuple(1 if k in (0, 4, 8) or k == 3 * i + j else 0 for k in range(9))


def level_generators(ctx: FieldCtx, level: FieldLevel) -> List[Mat]:
    """Порождающие GL₃ над уровнем: E_ij(1) и diag(g, 1, 1)."""
    gens = [elementary(i, j) for i in range(3) for j in range(3) if i != j]
    g = level_generator(ctx, level)
    if g != 1:
        gens.append(diag(g, 1, 1))
    return gens


def mat_mul(ctx: FieldCtx, x: Mat, y: Mat) -> Mat:
    add, mul = ctx.add, ctx.mul
    out = []
    for i in (0, 3, 6):
        a0, a1, a2 = x[i], x[i + 1], x[i + 2]
        for j in (0, 1, 2):
            out.append(add(add(mul(a0, y[j]), mul(a1, y[j + 3])), mul(a2, y[j + 6])))
    return tuple(out)


def det(ctx: FieldCtx, m: Mat) -> int:
    a, b, c, d, e, f, g, h, i = m
    add, sub, mul = ctx.add, ctx.sub, ctx.mul
    return add(
        sub(mul(a, sub(mul(e, i), mul(f, h))), mul(b, sub(mul(d, i), mul(f, g)))),
        mul(c, sub(mul(d, h), mul(e, g))),
    )


def mat_inv(ctx: FieldCtx, m: Mat) -> Mat:
    """Обратная матрица через присоединенную."""
    dt = det(ctx, m)
    if dt == 0:
        raise Singular(f"matrix {m} is singular")
    a, b, c, d, e, f, g, h, i = m
    sub, mul = ctx.sub, ctx.mul
    adj = (
        sub(mul(e, i), mul(f, h)), sub(mul(c, h), mul(b, i)), sub(mul(b, f), mul(c, e)),
        sub(mul(f, g), mul(d, i)), sub(mul(a, i), mul(c, g)), sub(mul(c, d), mul(a, f)),
        sub(mul(d, h), mul(e, g)), sub(mul(b, g), mul(a, h)), sub(mul(a, e), mul(b, d)),
    )
    inv_det = ctx.inv(dt)
    return tuple(mul(inv_det, x) for x in adj)


def make_matrix(ctx: FieldCtx, entries: Sequence[int]) -> Mat:
    """Построить матрицу с проверкой обратимости."""
    m = tuple(entries)
    if len(m) != 9:
        raise ValueError("a 3x3 matrix needs 9 entries")
    if det(ctx, m) == 0:
        raise Singular(f"matrix {m} is singular")
    return m


def char_poly(ctx: FieldCtx, m: Mat) -> Tuple[int, int, int]:
    """Коэффициенты (c0, c1, c2) характеристического многочлена x³ + c2·x² + c1·x + c0."""
    a, b, c, d, e, f, g, h, i = m
    add, sub, mul = ctx.add, ctx.sub, ctx.mul
    trace = add(add(a, e), i)
    minors = add(add(sub(mul(a, e), mul(b, d)), sub(mul(a, i), mul(c, g))), sub(mul(e, i), mul(f, h)))
    return ctx.neg(det(ctx, m)), minors, ctx.neg(trace)


def sub_scalar(ctx: FieldCtx, m: Mat, a: int) -> Mat:
    out = list(m)
    for k in (0, 4, 8):
        out[k] = ctx.sub(out[k], a)
    return tuple(out)


def rank(ctx: FieldCtx, m: Mat) -> int:
    rows = [list(m[0:3]), list(m[3:6]), list(m[6:9])]
    return len(_row_reduce(ctx, rows, 3)[1])


def _row_reduce(ctx: FieldCtx, rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Приведенный ступенчатый вид; возвращает строки и столбцы ведущих элементов."""
    rows = [list(r) for r in rows]
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((k for k in range(r, len(rows)) if rows[k][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ctx.inv(rows[r][col])
        rows[r] = [ctx.mul(inv, x) for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col]:
                factor = rows[k][col]
                rows[k] = [ctx.sub(x, ctx.mul(factor, y)) for x, y in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(ctx: FieldCtx, rows: List[List[int]], ncols: int) -> List[List[int]]:
    """Базис ядра линейного отображения, заданного строками."""
    reduced, pivots = _row_reduce(ctx, rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row, pc in zip(reduced, pivots):
            vec[pc] = ctx.neg(row[fc])
        basis.append(vec)
    return basis


# --- многочлены ---

def _poly_eval(ctx: FieldCtx, coeffs: Sequence[int], x: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = ctx.add(ctx.mul(value, x), c)
    return value


def _poly_div_linear(ctx: FieldCtx, coeffs: Sequence[int], r: int) -> List[int]:
    """Деление монического многочлена (младшие первыми) на (x - r) без остатка."""
    d = len(coeffs) - 1
    out = [0] * d
    out[d - 1] = coeffs[d]
    for k in range(d - 1, 0, -1):
        out[k - 1] = ctx.add(coeffs[k], ctx.mul(r, out[k]))
    return out


def factor_linear(ctx: FieldCtx, coeffs: Sequence[int], candidates: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Корни (с кратностью) среди candidates и оставшийся множитель без корней."""
    roots: List[int] = []
    rest = list(coeffs)
    for r in candidates:
        while len(rest) > 1 and _poly_eval(ctx, rest, r) == 0:
            roots.append(r)
            rest = _poly_div_linear(ctx, rest, r)
    return roots, rest


# --- классификация ---

def classify(ctx: FieldCtx, m: Mat, level: FieldLevel = FieldLevel.FQ) -> ClassDescriptor:
    """Тип класса сопряженности m в GL₃ над уровнем level."""
    c0, c1, c2 = char_poly(ctx, m)
    roots, rest = factor_linear(ctx, (c0, c1, c2, 1), level_units(ctx, level))
    if len(roots) == 3:
        distinct = sorted(set(roots))
        if len(distinct) == 1:
            a = distinct[0]
            rk = rank(ctx, sub_scalar(ctx, m, a))
            kind = {0: ClassKind.CENTRAL, 1: ClassKind.PAR1, 2: ClassKind.PAR2}[rk]
            return ClassDescriptor(kind, (a,))
        if len(distinct) == 2:
            a = next(r for r in distinct if roots.count(r) == 2)
            b = next(r for r in distinct if r != a)
            rk = rank(ctx, sub_scalar(ctx, m, a))
            return ClassDescriptor(ClassKind.HYP1 if rk == 1 else ClassKind.PAR3, (a, b))
        return ClassDescriptor(ClassKind.HYP2, tuple(distinct))
    if len(roots) == 1:
        v, u, _ = rest
        return ClassDescriptor(ClassKind.ELL2, (u, v, roots[0]))
    return ClassDescriptor(ClassKind.ELL1, (c0, c1, c2))


def prime_nonsquare(ctx: FieldCtx) -> Optional[int]:
    """Наименьший неквадрат F_p (None при p = 2)."""
    p = ctx.p
    if p == 2:
        return None
    return next(a for a in range(2, p) if pow(a, (p - 1) // 2, p) == p - 1)


def _sqrt(ctx: FieldCtx, a: int) -> int:
    root = ctx.exp(ctx.log(a) // 2) if ctx.p > 2 else ctx.pow(a, ctx.q // 2)
    neg = ctx.neg(root)
    return min(root, neg)


def ell2_parameters(ctx: FieldCtx, desc: ClassDescriptor) -> Tuple[int, int, int, int]:
    """(k, l, ξ, m) для блока [[k, lξ], [l, k]] ⊕ m при нечетном p."""
    if desc.kind != ClassKind.ELL2:
        raise UnsupportedKind(f"{desc.kind.value} has no quadratic block")
    if ctx.p == 2:
        raise UnsupportedKind("the (k, l, xi) form needs odd characteristic")
    u, v, m = desc.params
    xi = prime_nonsquare(ctx) if u < ctx.p and v < ctx.p else first_nonsquare(ctx)
    k = ctx.neg(ctx.div(u, 2))
    l_squared = ctx.div(ctx.sub(ctx.mul(k, k), v), xi)
    return k, _sqrt(ctx, l_squared), xi, m


def canonical_rep(ctx: FieldCtx, desc: ClassDescriptor) -> Mat:
    """Канонический представитель класса (формы матриц как в разборе классов)."""
    kind, params = desc
    if kind == ClassKind.CENTRAL:
        return scalar(params[0])
    if kind == ClassKind.HYP1:
        a, b = params
        return diag(a, a, b)
    if kind == ClassKind.HYP2:
        return diag(*params)
    if kind == ClassKind.PAR1:
        a = params[0]
        return (a, 0, a, 0, a, 0, 0, 0, a)
    if kind == ClassKind.PAR2:
        a = params[0]
        return (a, a, 0, 0, a, a, 0, 0, a)
    if kind == ClassKind.PAR3:
        a, b = params
        return (a, 0, 0, a, a, 0, 0, 0, b)
    if kind == ClassKind.ELL1:
        c0, c1, c2 = params
        neg = ctx.neg
        return (0, 0, neg(c0), 1, 0, neg(c1), 0, 1, neg(c2))
    u, v, m = params
    if ctx.p == 2:
        return (0, ctx.neg(v), 0, 1, ctx.neg(u), 0, 0, 0, m)
    k, l, xi, m = ell2_parameters(ctx, desc)
    return (k, ctx.mul(l, xi), 0, l, k, 0, 0, 0, m)


# --- перечисление классов ---

def centralizer_order_formula(kind: ClassKind, q: int) -> int:
    """Порядок централизатора элемента данного типа в GL₃(F_q)."""
    return {
        ClassKind.CENTRAL: group_order(q),
        ClassKind.HYP1: gl2_order(q) * (q - 1),
        ClassKind.HYP2: (q - 1) ** 3,
        ClassKind.PAR1: q ** 3 * (q - 1) ** 2,
        ClassKind.PAR2: q * q * (q - 1),
        ClassKind.PAR3: q * (q - 1) ** 2,
        ClassKind.ELL1: q ** 3 - 1,
        ClassKind.ELL2: (q * q - 1) * (q - 1),
    }[kind]


def class_count_formula(kind: ClassKind, q: int) -> int:
    """Число классов данного типа в GL₃(F_q)."""
    return {
        ClassKind.CENTRAL: q - 1,
        ClassKind.HYP1: (q - 1) * (q - 2),
        ClassKind.HYP2: (q - 1) * (q - 2) * (q - 3) // 6,
        ClassKind.PAR1: q - 1,
        ClassKind.PAR2: q - 1,
        ClassKind.PAR3: (q - 1) * (q - 2),
        ClassKind.ELL1: (q ** 3 - q) // 3,
        ClassKind.ELL2: (q - 1) * (q * q - q) // 2,
    }[kind]


def irreducible_polys(ctx: FieldCtx, degree: int, level: FieldLevel) -> List[Tuple[int, ...]]:
    """Унитарные неприводимые многочлены степени 2 или 3 над уровнем (младшие коэффициенты)."""
    elems = level_elements(ctx, level)
    units = level_units(ctx, level)
    out = []
    for lower in product(elems, repeat=degree):
        if lower[0] == 0:
            continue
        coeffs = tuple(lower) + (1,)
        if not any(_poly_eval(ctx, coeffs, r) == 0 for r in units):
            out.append(tuple(lower))
    return out


def class_descriptors(ctx: FieldCtx, level: FieldLevel) -> List[ClassDescriptor]:
    """Все классы GL₃ над уровнем, параметрически."""
    units = list(level_units(ctx, level))
    out: List[ClassDescriptor] = []
    out += [ClassDescriptor(ClassKind.CENTRAL, (a,)) for a in units]
    out += [ClassDescriptor(ClassKind.HYP1, (a, b)) for a in units for b in units if a != b]
    out += [ClassDescriptor(ClassKind.HYP2, t) for t in combinations(units, 3)]
    out += [ClassDescriptor(ClassKind.PAR1, (a,)) for a in units]
    out += [ClassDescriptor(ClassKind.PAR2, (a,)) for a in units]
    out += [ClassDescriptor(ClassKind.PAR3, (a, b)) for a in units for b in units if a != b]
    out += [ClassDescriptor(ClassKind.ELL1, c) for c in irreducible_polys(ctx, 3, level)]
    out += [
        ClassDescriptor(ClassKind.ELL2, (u, v, m))
        for v, u in irreducible_polys(ctx, 2, level)
        for m in units
    ]
    return out


def enumerate_gl3(ctx: FieldCtx, level: FieldLevel) -> Iterator[Mat]:
    """Все обратимые матрицы над уровнем (построчно, детерминированно)."""
    size = level_size(ctx, level)
    total = group_order(size)
    if total > settings.ENUMERATION_BUDGET:
        raise BudgetExceeded("GL3 enumeration", total, settings.ENUMERATION_BUDGET)
    vectors = list(product(range(size), repeat=3))[1:]
    for r1 in vectors:
        for r2 in vectors:
            a, b, c = r1
            d, e, f = r2
            sub, mul = ctx.sub, ctx.mul
            if sub(mul(a, e), mul(b, d)) == 0 and sub(mul(a, f), mul(c, d)) == 0 and sub(mul(b, f), mul(c, e)) == 0:
                continue
            for r3 in vectors:
                m = r1 + r2 + r3
                if det(ctx, m):
                    yield m


def conjugacy_classes(ctx: FieldCtx, level: FieldLevel, mode: str = "parametric") -> List[ClassData]:
    """
    Классы сопряженности GL₃ над уровнем.

    parametric: по дескрипторам с размерами по формулам; enumerate: полным перебором.
    """
    size = level_size(ctx, level)
    order = group_order(size)
    if mode == "parametric":
        classes = []
        for desc in class_descriptors(ctx, level):
            cent = centralizer_order_formula(desc.kind, size)
            classes.append(ClassData(desc, canonical_rep(ctx, desc), order // cent, cent, level))
        return classes
    if mode != "enumerate":
        raise ValueError(f"unknown class mode {mode!r}")
    counts: Counter = Counter(classify(ctx, m, level) for m in enumerate_gl3(ctx, level))
    classes = [
        ClassData(desc, canonical_rep(ctx, desc), count, order // count, level)
        for desc, count in sorted(counts.items(), key=lambda item: (list(ClassKind).index(item[0].kind), item[0].params))
    ]
    logger.info("Перечислено %s классов GL3 над F_%s", len(classes), size)
    return classes


# --- орбиты сопряжения ---

def conjugation_neighbors(ctx: FieldCtx, m: Mat, g: int) -> Iterator[Mat]:
    """s⁻¹·m·s для s из порождающего набора {E_ij(1)} ∪ {diag(g, 1, 1)}."""
    add, sub, mul = ctx.add, ctx.sub, ctx.mul
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            x = list(m)
            # m·E_ij(1): столбец j += столбец i
            for r in range(3):
                x[3 * r + j] = add(x[3 * r + j], x[3 * r + i])
            # E_ij(-1)·(...): строка i -= строка j
            for c in range(3):
                x[3 * i + c] = sub(x[3 * i + c], x[3 * j + c])
            yield tuple(x)
    if g != 1:
        g_inv = ctx.inv(g)
        x = list(m)
        x[1], x[2] = mul(g_inv, x[1]), mul(g_inv, x[2])
        x[3], x[6] = mul(g, x[3]), mul(g, x[6])
        yield tuple(x)


def conjugation_orbit(ctx: FieldCtx, m: Mat, level: FieldLevel = FieldLevel.FQ) -> Set[Mat]:
    """Класс сопряженности m обходом в ширину по порождающим."""
    size = level_size(ctx, level)
    expected = group_order(size) // centralizer_order_formula(classify(ctx, m, level).kind, size)
    if expected > settings.ORBIT_BUDGET:
        raise BudgetExceeded("conjugation orbit", expected, settings.ORBIT_BUDGET)
    g = level_generator(ctx, level)
    seen = {m}
    queue = deque([m])
    while queue:
        x = queue.popleft()
        for y in conjugation_neighbors(ctx, x, g):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# --- централизаторы ---

def commutant_basis(ctx: FieldCtx, m: Mat) -> List[Mat]:
    """Базис алгебры {X : X·m = m·X}."""
    rows = []
    for r in range(3):
        for c in range(3):
            row = [0] * 9
            for k in range(3):
                # X[r][k]·m[k][c]
                row[3 * r + k] = ctx.add(row[3 * r + k], m[3 * k + c])
                # -m[r][k]·X[k][c]
                row[3 * k + c] = ctx.sub(row[3 * k + c], m[3 * r + k])
            rows.append(row)
    return [tuple(v) for v in nullspace(ctx, rows, 9)]


def centralizer_elements(ctx: FieldCtx, m: Mat, level: FieldLevel = FieldLevel.FQ) -> List[Mat]:
    """Все элементы централизатора m в GL₃ над уровнем."""
    basis = commutant_basis(ctx, m)
    elems = level_elements(ctx, level)
    cost = len(elems) ** len(basis)
    if cost > settings.ORBIT_BUDGET:
        raise BudgetExceeded("centralizer enumeration", cost, settings.ORBIT_BUDGET)
    out = []
    add, mul = ctx.add, ctx.mul
    for coeffs in product(elems, repeat=len(basis)):
        x = [0] * 9
        for c, b in zip(coeffs, basis):
            if c:
                x = [add(xi, mul(c, bi)) for xi, bi in zip(x, b)]
        x = tuple(x)
        if det(ctx, x):
            out.append(x)
    return out


def centralizer_order_oracle(ctx: FieldCtx, m: Mat, level: FieldLevel = FieldLevel.FQ) -> int:
    """
    Порядок централизатора перебором алгебры коммутанта,
    либо |G| / |орбита|, если алгебра слишком велика.
    """
    basis = commutant_basis(ctx, m)
    size = level_size(ctx, level)
    if size ** len(basis) <= settings.ORBIT_BUDGET:
        return len(centralizer_elements(ctx, m, level))
    return group_order(size) // len(conjugation_orbit(ctx, m, level))


# --- смежные классы ---

def right_coset_transversal(ctx: FieldCtx) -> List[Mat]:
    """Представители правых смежных классов Γ\\G (Γ = GL₃(F_p), G = GL₃(F_q))."""
    if ctx.n == 1:
        return [IDENTITY]
    gamma = list(enumerate_gl3(ctx, FieldLevel.FP))
    covered: Set[Mat] = set()
    reps = []
    for x in enumerate_gl3(ctx, FieldLevel.FQ):
        if x in covered:
            continue
        reps.append(x)
        covered.update(mat_mul(ctx, y, x) for y in gamma)
    logger.info("Построено %s правых смежных классов Γ\\G", len(reps))
    return reps


def double_coset_count(ctx: FieldCtx) -> int:
    """|Γ\\G/Γ| как число Γ-орбит на левых смежных классах G/Γ."""
    if ctx.n == 1:
        return 1
    gamma = list(enumerate_gl3(ctx, FieldLevel.FP))
    coset_of: Dict[Mat, int] = {}
    reps: List[Mat] = []
    for x in enumerate_gl3(ctx, FieldLevel.FQ):
        if x in coset_of:
            continue
        for y in gamma:
            coset_of[mat_mul(ctx, x, y)] = len(reps)
        reps.append(x)
    generators = level_generators(ctx, FieldLevel.FP)
    seen: Set[int] = set()
    orbits = 0
    for start in range(len(reps)):
        if start in seen:
            continue
        orbits += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            idx = queue.popleft()
            for s in generators:
                nxt = coset_of[mat_mul(ctx, s, reps[idx])]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return orbits
