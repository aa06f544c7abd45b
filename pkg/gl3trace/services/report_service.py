"""
Сервис отчетов: сборка схем из результатов, детерминированные JSON и CSV,
чтение и запись таблиц сферических функций.
"""
import csv
import io
import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

from pydantic import BaseModel

from config.settings import settings
from gl3trace.api import schemas
from gl3trace.exceptions import ConfigurationError
from gl3trace.models.conjugacy import ClassData
from gl3trace.models.geometric import GeometricSide, TotalRow
from gl3trace.models.halfspace import HPoint
from gl3trace.models.ledger import Ledger
from gl3trace.models.spectral import ChecksumReport, CharacterRow, ExampleResult, MultiplicityReport
from gl3trace.models.spherical import SphericalFn
from gl3trace.services.domain_service import DomainRow
from gl3trace.services.workspace_service import TraceWorkspace
from gl3trace.utils.numbers import format_number, parse_rational

logger = logging.getLogger(__name__)

LIMITATIONS = [
    "the split cubic elliptic branch (3 | n) is exercised on code paths only; "
    "it is not verifiable by enumeration at feasible q",
    "multiplicities are available only for gcd(n, 6) = 1",
]


def format_optional(value) -> Optional[str]:
    return None if value is None else format_number(value)


def _strs(values: Iterable[int]) -> List[str]:
    return [str(v) for v in values]


def make_header(command: str, config: schemas.RunConfig, ws: Optional[TraceWorkspace] = None) -> schemas.ReportHeader:
    field = None
    if ws is not None:
        field = {key: format_number(value) for key, value in ws.ctx.header().items()}
    return schemas.ReportHeader(
        app=settings.APP_NAME,
        version=settings.APP_VERSION,
        command=command,
        config=config.echo(),
        field=field,
        limitations=LIMITATIONS,
    )


def discrepancy_schemas(ledger: Ledger) -> List[schemas.DiscrepancySchema]:
    return [schemas.DiscrepancySchema(**entry._asdict()) for entry in ledger]


def geometric_schema(side: GeometricSide, totals: Sequence[TotalRow], bi_invariant: bool) -> schemas.GeometricSchema:
    rows = [
        schemas.GeomRowSchema(
            kind=row.descriptor.kind.value,
            params=_strs(row.descriptor.params),
            representative=_strs(row.representative),
            g_kind=row.g_descriptor.kind.value,
            centralizer_g=format_optional(row.centralizer_g),
            centralizer_gamma=format_optional(row.centralizer_gamma),
            claimed_centralizer_g=format_optional(row.claimed_centralizer_g),
            claimed_centralizer_gamma=format_optional(row.claimed_centralizer_gamma),
            weight=format_optional(row.weight),
            oracle_value=format_optional(row.oracle_value),
            closed_value=format_optional(row.closed_value),
            closed_status=row.closed_status,
            match=row.match,
        )
        for row in side.rows
    ]
    total_rows = [
        schemas.TotalRowSchema(
            kind=t.kind, variant=t.variant, closed_value=format_optional(t.closed_value),
            oracle_value=format_optional(t.oracle_value), match=t.match,
        )
        for t in totals
    ]
    return schemas.GeometricSchema(
        function=side.function,
        rows=rows,
        totals=total_rows,
        oracle_total=format_optional(side.oracle_total),
        closed_total=format_optional(side.closed_total),
        direct_total=format_optional(side.direct_total),
        chain_holds=side.chain_holds,
        bi_invariant=bi_invariant,
    )


def domain_schemas(rows: Sequence[DomainRow]) -> List[schemas.DomainRowSchema]:
    return [
        schemas.DomainRowSchema(
            kind=row.kind.value,
            group=row.group,
            domain_size=format_optional(row.check.domain_size),
            expected_size=format_optional(row.expected_size),
            orbit_count=format_optional(row.check.orbit_count),
            complete=row.check.complete,
            unique=row.check.unique,
            bijection=row.bijection,
        )
        for row in rows
    ]


def character_schema(rows: Sequence[CharacterRow], index: int, orthogonality: Fraction, order: int,
                     identity_value: int) -> schemas.CharacterSchema:
    return schemas.CharacterSchema(
        rows=[
            schemas.CharacterRowSchema(
                kind=row.descriptor.kind.value,
                params=_strs(row.descriptor.params),
                class_size=format_optional(row.class_size),
                formula=format_optional(row.formula),
                oracle=format_optional(row.oracle),
                match=row.match,
            )
            for row in rows
        ],
        identity_value=format_optional(identity_value),
        index=format_optional(index),
        orthogonality=format_optional(orthogonality),
        group_order=format_optional(order),
    )


def checksum_schema(checksums: ChecksumReport) -> schemas.ChecksumSchema:
    return schemas.ChecksumSchema(
        index=format_optional(checksums.index),
        dimension_sum=format_optional(checksums.dimension_sum),
        group_order=format_optional(checksums.group_order),
        dual_square_sum=format_optional(checksums.dual_square_sum),
        square_sum=format_optional(checksums.square_sum),
        double_cosets=format_optional(checksums.double_cosets),
        checks=checksums.checks,
    )


def multiplicity_schemas(report: MultiplicityReport) -> List[schemas.MultiplicityRowSchema]:
    return [
        schemas.MultiplicityRowSchema(
            family=row.family, case=row.case, value=format_optional(row.value), count=format_optional(row.count),
            dimension=format_optional(row.dimension), integral=row.integral, nonnegative=row.nonnegative,
        )
        for row in report.rows
    ]


def example_schema(result: ExampleResult) -> schemas.ExampleSchema:
    return schemas.ExampleSchema(
        name=result.name,
        claimed=format_optional(result.claimed),
        computed=format_optional(result.computed),
        holds=result.holds,
        details={key: format_number(value) for key, value in result.details.items()},
    )


# --- сериализация ---

def to_json(report: BaseModel) -> str:
    """JSON с сортировкой ключей и фиксированным отступом."""
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(value) if not isinstance(value, str) else value for value in row])
    return buffer.getvalue()


def write_output(text: str, out: Optional[str], default_name: str) -> Optional[Path]:
    """Записать отчет в out, в REPORTS_DIR или вернуть None (печать в stdout делает CLI)."""
    target = Path(out) if out else (Path(settings.REPORTS_DIR) / default_name if settings.REPORTS_DIR else None)
    if target is None:
        return None
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info("Отчет записан в %s", target)
    return target


def classes_csv(classes: Sequence[ClassData], characters: Sequence[CharacterRow]) -> str:
    """Таблица G-классов со значениями χ_ρ (формула и подсчет неподвижных точек)."""
    return to_csv(
        ["kind", "params", "representative", "class_size", "centralizer_order", "level", "chi_rho", "chi_oracle"],
        (
            [c.descriptor.kind.value, " ".join(_strs(c.descriptor.params)), " ".join(_strs(c.representative)),
             c.class_size, c.centralizer_order, c.level.value, row.formula, row.oracle]
            for c, row in zip(classes, characters)
        ),
    )


def orbits_csv(ws: TraceWorkspace) -> str:
    """Канонические представители K-орбит: координаты (α₁..β₃) и размер орбиты."""
    ctx = ws.ctx
    table = ws.orbits
    return to_csv(
        ["alpha1", "alpha2", "alpha3", "beta1", "beta2", "beta3", "orbit_size"],
        (list(ctx.t_split(rep.alpha)) + list(ctx.t_split(rep.beta)) + [table.sizes[rep]] for rep in table.reps),
    )


# --- таблицы функций ---

def f_table_json(ws: TraceWorkspace, f: SphericalFn) -> str:
    """Таблица значений f на канонических представителях K-орбит."""
    ctx = ws.ctx
    entries = [
        {
            "orbit_rep": list(ctx.t_split(rep.alpha)) + list(ctx.t_split(rep.beta)),
            "value": format_number(f.at_rep(rep)),
        }
        for rep in ws.orbits.reps
    ]
    return json.dumps(entries, indent=2) + "\n"


def read_f_table(ws: TraceWorkspace, path: str) -> SphericalFn:
    """Прочитать f-таблицу; точки должны быть каноническими представителями."""
    ctx = ws.ctx
    try:
        entries = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read f-table {path}: {exc}", detail=str(exc)) from exc
    values = {}
    for entry in entries:
        try:
            coords = [int(x) for x in entry["orbit_rep"]]
            value = parse_rational(entry["value"])
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise ConfigurationError(f"malformed f-table entry {entry!r}", detail=str(exc)) from exc
        if len(coords) != 6 or any(not 0 <= c < ctx.q for c in coords):
            raise ConfigurationError(f"bad orbit representative {coords}", detail=str(coords))
        z = HPoint(ctx.t_join(*coords[:3]), ctx.t_join(*coords[3:]))
        if ws.orbits.rep_of.get(z) != z:
            raise ConfigurationError(f"{coords} is not a canonical orbit representative", detail=str(coords))
        values[z] = value
    return SphericalFn(Path(path).stem, values=values, orbits=ws.orbits)
