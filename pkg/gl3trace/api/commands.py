"""
Команды CLI: verify, orbital, decompose, orbits, chars.

Каждая команда принимает RunConfig и возвращает CommandResult с кодом выхода
и текстом отчета. Ошибки конфигурации и бюджета пробрасываются наверх,
их переводит в коды выхода gl3trace.main.
"""
import logging
from contextlib import contextmanager
from typing import List, NamedTuple, Optional, Tuple

from config.settings import settings
from gl3trace.api import schemas
from gl3trace.exceptions import ConfigurationError
from gl3trace.models.conjugacy import ClassDescriptor, ClassKind
from gl3trace.models.field import FieldCtx, FieldLevel
from gl3trace.models.spherical import SphericalFn
from gl3trace.services import report_service
from gl3trace.services.char_count_service import all_condition_ids, count_chars, enumeration_cost
from gl3trace.services.closed_form_service import closed_form_status, compare_total_contributions, orbital_location
from gl3trace.services.domain_service import check_domains
from gl3trace.services.geometric_service import (
    check_bi_invariance,
    constant_fn,
    delta_fn,
    geometric_side,
    orbital_sum_oracle,
    random_spherical_fn,
)
from gl3trace.services.gf_tower_service import build_field
from gl3trace.services.gl3_service import IDENTITY, canonical_rep, class_descriptors, group_order
from gl3trace.services.halfspace_service import halfspace_size
from gl3trace.services.ledger_service import create_ledger, record_discrepancy
from gl3trace.services.multiplicity_service import check_regime, decompose, spectral_checksums
from gl3trace.services.spectral_service import (
    character_orthogonality,
    character_table,
    example_identities,
)
from gl3trace.services.workspace_service import TraceWorkspace, open_workspace

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_BUDGET = 2
EXIT_CONFIG = 3


class CommandResult(NamedTuple):
    exit_code: int
    text: str
    default_name: str
    failures: List[str]


@contextmanager
def budget_override(config: schemas.RunConfig):
    """--budget заменяет ENUMERATION_BUDGET на время одной команды."""
    saved = settings.ENUMERATION_BUDGET
    if config.budget is not None:
        if config.budget <= 0:
            raise ConfigurationError("--budget must be positive", detail=f"budget = {config.budget}")
        settings.ENUMERATION_BUDGET = config.budget
    try:
        yield
    finally:
        settings.ENUMERATION_BUDGET = saved


def _workspace(config: schemas.RunConfig) -> TraceWorkspace:
    config.require_halfspace()
    return open_workspace(config.p, config.n, poly=config.poly, delta_rule=config.delta_rule)


def _double_coset_ctx(config: schemas.RunConfig, ctx: Optional[FieldCtx] = None) -> Optional[FieldCtx]:
    """Поле для оракула |Γ\\G/Γ|, если перебор G укладывается в бюджет."""
    if config.n > 1 and group_order(config.q) * group_order(config.p) > settings.ENUMERATION_BUDGET:
        return None
    return ctx or build_field(config.p, config.n, poly=config.poly, with_tower=False)


def _result(failures: List[str], text: str, name: str) -> CommandResult:
    for failure in failures:
        logger.error("Нарушено тождество: %s", failure)
    return CommandResult(EXIT_IDENTITY_FAILED if failures else EXIT_OK, text, name, failures)


def _checksum_failures(checks) -> List[str]:
    return [f"checksum.{name}" for name, ok in checks.items() if ok is False]


# --- verify ---

def verify_functions(ws: TraceWorkspace, config: schemas.RunConfig) -> List[SphericalFn]:
    """f ≡ 1, f = δ_{p₀}, таблица из --f-table и num_f случайных функций."""
    functions = [constant_fn(1), delta_fn(ws)]
    if config.f_table:
        functions.append(report_service.read_f_table(ws, config.f_table))
    functions += [random_spherical_fn(ws, config.seed + i) for i in range(config.num_f)]
    return functions


def cmd_verify(config: schemas.RunConfig) -> CommandResult:
    """
    Полная проверка при (p, n): геометрическая сторона для набора функций,
    χ_ρ, примеры, контрольные суммы и фундаментальные области.

    Код 1 только при нарушении тождеств между оракулами; расхождения
    печатных формул попадают в журнал.
    """
    with budget_override(config):
        ws = _workspace(config)
        ledger = create_ledger()
        failures: List[str] = []

        geometric = []
        csv_rows = []
        for f in verify_functions(ws, config):
            side = geometric_side(ws, f, ledger)
            totals = compare_total_contributions(ws, f, ledger)
            bi_invariant = f.is_constant or check_bi_invariance(ws, f, seed=config.seed)
            if not side.chain_holds:
                failures.append(f"geometric.{f.name}")
            if not bi_invariant:
                failures.append(f"bi_invariance.{f.name}")
            geometric.append(report_service.geometric_schema(side, totals, bi_invariant))
            csv_rows += [
                [f.name, row.descriptor.kind.value, " ".join(map(str, row.descriptor.params)), row.weight,
                 row.oracle_value, row.closed_value, row.closed_status,
                 "" if row.match is None else str(row.match).lower()]
                for row in side.rows
            ]

        rows = character_table(ws, ledger)
        index = group_order(ws.q) // group_order(ws.p)
        identity = next(row for row in rows if canonical_rep(ws.ctx, row.descriptor) == IDENTITY)
        orthogonality = character_orthogonality(rows)
        if identity.oracle != index:
            failures.append("characters.identity")
        if orthogonality != group_order(ws.q):
            failures.append("characters.orthogonality")
        characters = report_service.character_schema(rows, index, orthogonality, group_order(ws.q), identity.oracle)

        examples = example_identities(ws, ledger)
        failures += [f"example.{example.name}" for example in examples if not example.holds]

        checksums = spectral_checksums(ws.p, ws.n, _double_coset_ctx(config, ws.ctx))
        checks = checksums.checks
        if checks["dual"] is False:
            failures.append("checksum.dual")
        if checks["dimension"] is False:
            record_discrepancy(ledger, "checksum.dimension", checksums.index, checksums.dimension_sum, p=ws.p, n=ws.n)
        if checks["double_cosets"] is False:
            record_discrepancy(
                ledger, "checksum.double_cosets", checksums.square_sum, checksums.double_cosets, p=ws.p, n=ws.n,
            )

        domains = check_domains(ws.ctx, ws.g_classes, ledger)

        if config.format == "csv":
            text = report_service.to_csv(
                ["function", "kind", "params", "weight", "oracle", "closed", "status", "match"], csv_rows,
            )
        else:
            report = schemas.VerifyReport(
                header=report_service.make_header("verify", config, ws),
                geometric=geometric,
                domains=report_service.domain_schemas(domains),
                characters=characters,
                checksums=report_service.checksum_schema(checksums),
                examples=[report_service.example_schema(example) for example in examples],
                failures=failures,
                discrepancies=report_service.discrepancy_schemas(ledger),
            )
            text = report_service.to_json(report)
        logger.info("verify p=%s n=%s: нарушений %s, расхождений %s", ws.p, ws.n, len(failures), len(ledger))
        return _result(failures, text, f"verify_p{ws.p}_n{ws.n}.{config.format or 'json'}")


# --- orbital ---

def parse_descriptor(ctx: FieldCtx, text: str) -> ClassDescriptor:
    """"kind:a,b,c" -> ClassDescriptor; класс должен существовать над F_q."""
    kind_text, _, params_text = text.partition(":")
    try:
        kind = ClassKind(kind_text.strip().lower())
        params = tuple(int(x) for x in params_text.split(",") if x.strip())
    except ValueError as exc:
        raise ConfigurationError(f"cannot parse class descriptor {text!r}", detail=text) from exc
    desc = ClassDescriptor(kind, params)
    if desc not in class_descriptors(ctx, FieldLevel.FQ):
        raise ConfigurationError(f"{text!r} is not a conjugacy class of GL3(F_{ctx.q})", detail=text)
    return desc


def orbital_function(ws: TraceWorkspace, config: schemas.RunConfig) -> SphericalFn:
    if config.f_table:
        return report_service.read_f_table(ws, config.f_table)
    if config.function == "delta":
        return delta_fn(ws)
    if config.function == "random":
        return random_spherical_fn(ws, config.seed)
    return constant_fn(1)


def cmd_orbital(config: schemas.RunConfig, descriptor: Optional[str] = None, list_classes: bool = False) -> CommandResult:
    """Замкнутая форма и оракул I_G(f, γ) для одного G-класса, с входами Hf."""
    with budget_override(config):
        ws = _workspace(config)
        if list_classes:
            text = report_service.classes_csv(ws.g_classes, character_table(ws))
            return CommandResult(EXIT_OK, text, f"classes_p{ws.p}_n{ws.n}.csv", [])
        if not descriptor:
            raise ConfigurationError("orbital needs --class or --list-classes", detail="--class")
        desc = parse_descriptor(ws.ctx, descriptor)
        f = orbital_function(ws, config)
        ledger = create_ledger()

        ws.hf_trace = []
        try:
            closed, status = closed_form_status(ws, f, desc)
            inputs: List[Tuple] = list(ws.hf_trace)
        finally:
            ws.hf_trace = None

        oracle = None
        if halfspace_size(ws.q) <= settings.ENUMERATION_BUDGET:
            oracle = orbital_sum_oracle(ws, f, canonical_rep(ws.ctx, desc))
        else:
            logger.warning("Оракул для %s пропущен: |H_q| больше бюджета", descriptor)
        match = None if closed is None or oracle is None else closed == oracle
        if match is False or status == "undefined":
            record_discrepancy(
                ledger, orbital_location(desc.kind, ws.n), closed if closed is not None else status, oracle,
                function=f.name, params=list(desc.params),
            )

        if config.format == "csv":
            text = report_service.to_csv(
                ["kind", "params", "function", "closed", "status", "oracle", "match"],
                [[desc.kind.value, " ".join(map(str, desc.params)), f.name, closed, status, oracle,
                  "" if match is None else str(match).lower()]],
            )
        else:
            report = schemas.OrbitalReport(
                header=report_service.make_header("orbital", config, ws),
                kind=desc.kind.value,
                params=[str(x) for x in desc.params],
                representative=[str(x) for x in canonical_rep(ws.ctx, desc)],
                function=f.name,
                closed_value=report_service.format_optional(closed),
                closed_status=status,
                oracle_value=report_service.format_optional(oracle),
                match=match,
                horocycle_inputs=[
                    {"kappa": [str(x) for x in kappa], "value": report_service.format_optional(value)}
                    for kappa, value in inputs
                ],
                discrepancies=report_service.discrepancy_schemas(ledger),
            )
            text = report_service.to_json(report)
        return CommandResult(EXIT_OK, text, f"orbital_{desc.kind.value}_p{ws.p}_n{ws.n}.{config.format or 'json'}", [])


# --- decompose ---

def cmd_decompose(config: schemas.RunConfig) -> CommandResult:
    """Кратности m(π, ρ) при gcd(n, 6) = 1 и контрольные суммы."""
    with budget_override(config):
        config.validate_field()
        check_regime(config.n)
        report = decompose(config.p, config.n)
        failures = [f"multiplicity.{row.family}.{row.case}" for row in report.failures]
        checksums = spectral_checksums(config.p, config.n, _double_coset_ctx(config))
        failures += _checksum_failures(checksums.checks)

        rows = report_service.multiplicity_schemas(report)
        if config.format == "csv":
            text = report_service.to_csv(
                ["family", "case", "multiplicity", "count", "dimension"],
                [[row.family, row.case, row.value, row.count, row.dimension] for row in rows],
            )
        else:
            text = report_service.to_json(schemas.DecomposeReport(
                header=report_service.make_header("decompose", config),
                multiplicities=rows,
                checksums=report_service.checksum_schema(checksums),
                failures=failures,
            ))
        return _result(failures, text, f"decompose_p{config.p}_n{config.n}.{config.format or 'json'}")


# --- orbits ---

def cmd_orbits(config: schemas.RunConfig) -> CommandResult:
    """
    Канонические представители K-орбит. CSV по умолчанию; json выдает
    шаблон f-таблицы с нулевыми значениями.
    """
    with budget_override(config):
        ws = _workspace(config)
        if config.format == "json":
            return CommandResult(EXIT_OK, report_service.f_table_json(ws, constant_fn(0)), f"f_table_q{ws.q}.json", [])
        return CommandResult(EXIT_OK, report_service.orbits_csv(ws), f"orbits_q{ws.q}.csv", [])


# --- chars ---

def cmd_chars(config: schemas.RunConfig) -> CommandResult:
    """Число характеров по каждому условию: перебором (малые q) и формулами."""
    with budget_override(config):
        config.validate_field()
        p, q = config.p, config.q
        rows = []
        failures = []
        for condition in all_condition_ids():
            domain = condition.partition(".")[0]
            formula = count_chars(condition, p, q, method="formula")
            enumerated = None
            if enumeration_cost(domain, q) <= settings.CHAR_ENUMERATION_LIMIT:
                enumerated = count_chars(condition, p, q, method="enumerate")
            match = None if enumerated is None else enumerated == formula
            if match is False:
                failures.append(f"chars.{condition}")
            rows.append(schemas.CharCountRowSchema(
                condition=condition,
                enumerated=report_service.format_optional(enumerated),
                formula=str(formula),
                match=match,
            ))
        if config.format == "csv":
            text = report_service.to_csv(
                ["condition", "enumerated", "formula", "match"],
                [[row.condition, row.enumerated or "", row.formula, "" if row.match is None else str(row.match).lower()]
                 for row in rows],
            )
        else:
            text = report_service.to_json(schemas.CharsReport(header=report_service.make_header("chars", config), rows=rows))
        return _result(failures, text, f"chars_p{p}_n{config.n}.{config.format or 'json'}")


COMMANDS = {
    "verify": cmd_verify,
    "orbital": cmd_orbital,
    "decompose": cmd_decompose,
    "orbits": cmd_orbits,
    "chars": cmd_chars,
}
