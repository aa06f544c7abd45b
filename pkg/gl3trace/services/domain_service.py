"""
Сервис фундаментальных областей централизаторов G_γ на H_q и их проверки.

Каждая область задается явной параметризацией по координатам (α₁, α₂, α₃),
(β₁, β₂, β₃); проверка разбивает H_q на орбиты G_γ и требует ровно одной
точки области в каждой орбите.
"""
import logging
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence

from gl3trace.exceptions import UnsupportedKind
from gl3trace.models.conjugacy import ClassData, ClassDescriptor, ClassKind, Mat
from gl3trace.models.field import FieldCtx, FieldLevel
from gl3trace.models.halfspace import HPoint
from gl3trace.models.ledger import Ledger
from gl3trace.services.gl3_service import centralizer_elements, group_order
from gl3trace.services.halfspace_service import enumerate_halfspace, halfspace_size, subgroup_orbits
from gl3trace.services.ledger_service import record_discrepancy

logger = logging.getLogger(__name__)


class DomainCheck(NamedTuple):
    """Результат проверки фундаментальной области."""
    complete: bool
    unique: bool
    domain_size: int
    orbit_count: int
    orbit_size_total: int

    @property
    def ok(self) -> bool:
        return self.complete and self.unique


def _point(ctx: FieldCtx, alpha: Sequence[int], beta: Sequence[int]) -> HPoint:
    return HPoint(ctx.t_join(*alpha), ctx.t_join(*beta))


def _hyp2_domain(ctx: FieldCtx) -> Iterator[HPoint]:
    elems = range(ctx.q)
    units = range(1, ctx.q)
    for x, r, y, s in product(elems, repeat=4):
        if ctx.mul(y, s) != 1:
            yield _point(ctx, (x, 1, y), (r, s, 1))
    for x, r, s in product(elems, elems, units):
        yield _point(ctx, (x, 0, 1), (r, 1, s))
    for x, r, y in product(elems, elems, units):
        yield _point(ctx, (x, y, 1), (r, 1, 0))
    for x, y in product(elems, repeat=2):
        yield _point(ctx, (x, 0, 1), (y, 1, 0))


def fundamental_domain(ctx: FieldCtx, desc: ClassDescriptor) -> Iterator[HPoint]:
    """
    Фундаментальная область для G_γ класса desc.

    Для эллиптического класса второго рода при четном n и для первого рода
    при 3 | n централизатор диагонализуем, и используется область Hyp2.
    """
    kind = desc.kind
    elems = range(ctx.q)
    units = range(1, ctx.q)
    if kind == ClassKind.HYP1:
        for u, v in product(elems, repeat=2):
            yield _point(ctx, (u, 1, 0), (v, 0, 1))
    elif kind == ClassKind.HYP2:
        yield from _hyp2_domain(ctx)
    elif kind == ClassKind.PAR1:
        for u, v in product(units, elems):
            yield _point(ctx, (0, u, 0), (0, v, 1))
        for u in units:
            yield _point(ctx, (0, 1, u), (0, 1, 0))
    elif kind == ClassKind.PAR2:
        # область для борелевской подгруппы B
        for v in elems:
            yield _point(ctx, (0, 1, 0), (0, v, 1))
        yield _point(ctx, (0, 0, 1), (0, 1, 0))
    elif kind == ClassKind.PAR3:
        for v, u, s, r in product(elems, elems, elems, units):
            yield _point(ctx, (v, 1, u), (s, 0, r))
        for v, s, r in product(elems, elems, units):
            yield _point(ctx, (v, 0, 1), (s, r, 0))
    elif kind == ClassKind.ELL2 and ctx.n % 2 == 0:
        yield from _hyp2_domain(ctx)
    elif kind == ClassKind.ELL2:
        for x, u, y, v in product(elems, elems, elems, units):
            yield _point(ctx, (x, u, v), (y, 1, 0))
    elif kind == ClassKind.ELL1 and ctx.n % 3 == 0:
        yield from _hyp2_domain(ctx)
    else:
        raise UnsupportedKind(f"no fundamental domain is known for {kind.value}", kind=kind.value)


def domain_size_formula(kind: ClassKind, q: int) -> int:
    """Ожидаемое число точек в области."""
    if kind == ClassKind.HYP1:
        return q * q
    if kind == ClassKind.HYP2:
        return q ** 3 * (q + 1)
    if kind == ClassKind.PAR1:
        return q * q - 1
    if kind == ClassKind.PAR2:
        return q + 1
    if kind == ClassKind.PAR3:
        return q * q * (q * q - 1)
    if kind == ClassKind.ELL2:
        return q ** 3 * (q - 1)
    raise UnsupportedKind(f"no fundamental domain is known for {kind.value}", kind=kind.value)


def modulo_center(ctx: FieldCtx, elements: Sequence[Mat]) -> List[Mat]:
    """Представители по модулю скаляров: первый ненулевой элемент равен 1."""
    return [g for g in elements if next(x for x in g if x) == 1]


def borel_elements(ctx: FieldCtx) -> List[Mat]:
    """Верхнетреугольные обратимые матрицы над F_q."""
    elems = range(ctx.q)
    units = range(1, ctx.q)
    return [
        (z, y, x, 0, c, b, 0, 0, d)
        for z, c, d in product(units, repeat=3)
        for y, x, b in product(elems, repeat=3)
    ]


def verify_fundamental_domain(ctx: FieldCtx, domain: Sequence[HPoint], group: Sequence[Mat]) -> DomainCheck:
    """
    Проверить, что domain содержит ровно по одной точке каждой орбиты группы group на H_q.

    group: все элементы подгруппы (скаляры можно опустить: они действуют тривиально).
    """
    label = subgroup_orbits(ctx, modulo_center(ctx, group), enumerate_halfspace(ctx))
    orbit_count = max(label.values()) + 1
    sizes: Dict[int, int] = {}
    for lab in label.values():
        sizes[lab] = sizes.get(lab, 0) + 1
    hit: Dict[int, int] = {}
    for z in domain:
        lab = label[z]
        hit[lab] = hit.get(lab, 0) + 1
    unique = all(count == 1 for count in hit.values()) and len(set(domain)) == len(domain)
    complete = len(hit) == orbit_count
    total = sum(sizes[lab] for lab in hit)
    logger.info(
        "Область: %s точек, %s орбит, полнота=%s, единственность=%s",
        len(domain), orbit_count, complete, unique,
    )
    return DomainCheck(complete, unique, len(domain), orbit_count, total)


def case_one_bijection(ctx: FieldCtx, group: Sequence[Mat], double_cosets: Optional[int] = None) -> bool:
    """|G_γ\\G| = |G_γ\\G/K|·|K/Z| для централизатора, не пересекающего K вне центра."""
    if double_cosets is None:
        label = subgroup_orbits(ctx, modulo_center(ctx, group), enumerate_halfspace(ctx))
        double_cosets = max(label.values()) + 1
    k_mod_z = ctx.q * ctx.q + ctx.q + 1
    return group_order(ctx.q) == len(group) * double_cosets * k_mod_z


def orbit_sizes_cover(ctx: FieldCtx, check: DomainCheck) -> bool:
    """Сумма размеров орбит точек области равна |H_q|."""
    return check.orbit_size_total == halfspace_size(ctx.q)


class DomainRow(NamedTuple):
    kind: ClassKind
    group: str
    expected_size: int
    check: DomainCheck
    bijection: Optional[bool] = None


def check_domains(ctx: FieldCtx, classes: Sequence[ClassData], ledger: Optional[Ledger] = None) -> List[DomainRow]:
    """
    Проверить области для первого G-класса каждого типа против централизатора
    перебором; для par2 дополнительно против борелевской подгруппы.
    """
    rows: List[DomainRow] = []
    for kind in (ClassKind.HYP1, ClassKind.HYP2, ClassKind.PAR1, ClassKind.PAR2, ClassKind.PAR3, ClassKind.ELL2):
        if kind == ClassKind.ELL2 and ctx.n % 2 == 0:
            continue
        cls = next(
            (
                c for c in classes
                if c.descriptor.kind == kind
                and (kind != ClassKind.ELL2 or all(x < ctx.p for x in c.descriptor.params))
            ),
            None,
        )
        if cls is None:
            continue
        domain = list(fundamental_domain(ctx, cls.descriptor))
        expected = domain_size_formula(kind, ctx.q)
        groups = [("centralizer", centralizer_elements(ctx, cls.representative, FieldLevel.FQ))]
        if kind == ClassKind.PAR2:
            groups.append(("borel", borel_elements(ctx)))
        for name, group in groups:
            check = verify_fundamental_domain(ctx, domain, group)
            if not check.ok or check.domain_size != expected:
                record_discrepancy(
                    ledger, f"fundamental_domain.{kind.value}", "one point per orbit",
                    f"complete={check.complete} unique={check.unique}",
                    group=name, q=ctx.q, orbits=check.orbit_count, size=check.domain_size,
                )
            bijection = None
            if name == "centralizer":
                bijection = case_one_bijection(ctx, group, check.orbit_count)
                if not bijection:
                    record_discrepancy(
                        ledger, f"case_one_bijection.{kind.value}", group_order(ctx.q),
                        len(group) * check.orbit_count * (ctx.q * ctx.q + ctx.q + 1), q=ctx.q,
                    )
            rows.append(DomainRow(kind, name, expected, check, bijection))
    return rows
