"""
Точка входа CLI: python -m gl3trace.main <команда> [флаги].

Коды выхода: 0 успех, 1 нарушено тождество между оракулами,
2 превышен бюджет перебора, 3 ошибка конфигурации.
"""
import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from config.settings import settings
from gl3trace.api.commands import (
    COMMANDS,
    EXIT_BUDGET,
    EXIT_CONFIG,
    EXIT_IDENTITY_FAILED,
    EXIT_OK,
    CommandResult,
)
from gl3trace.api.schemas import FUNCTIONS, OUTPUT_FORMATS, RunConfig
from gl3trace.exceptions import BudgetExceeded, ConfigurationError, Gl3TraceError
from gl3trace.logging_config import configure_logging
from gl3trace.services.gf_tower_service import DELTA_RULES
from gl3trace.services.report_service import write_output
from gl3trace.utils.i18n import translate

logger = logging.getLogger(__name__)


def _poly(text: str) -> List[int]:
    """"1,1,0,1" -> [1, 1, 0, 1] (коэффициенты от младшего к старшему)."""
    try:
        return [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid polynomial {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=settings.DEFAULT_P, help="characteristic")
    common.add_argument("--n", type=int, default=settings.DEFAULT_N, help="degree of F_q over F_p")
    common.add_argument("--poly", type=_poly, default=None, help="modulus of F_q, coefficients low to high")
    common.add_argument("--delta-rule", choices=DELTA_RULES, default="first-nonresidue")
    common.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    common.add_argument("--num-f", type=int, default=settings.DEFAULT_NUM_F, help="number of random functions")
    common.add_argument("--budget", type=int, default=None, help="enumeration budget for this run")
    common.add_argument("--f-table", default=None, metavar="PATH", help="JSON table of f on K-orbit representatives")
    common.add_argument("--out", default=None, metavar="PATH")
    common.add_argument("--format", choices=OUTPUT_FORMATS, default=None)

    parser = argparse.ArgumentParser(prog="gl3trace", description=settings.APP_NAME)
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.APP_VERSION}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="check both sides of the trace formula")
    orbital = sub.add_parser("orbital", parents=[common], help="closed form and oracle for one class")
    orbital.add_argument("--class", dest="descriptor", default=None, help='descriptor "kind:a,b,c"')
    orbital.add_argument("--list-classes", action="store_true", help="CSV of the conjugacy classes of G")
    orbital.add_argument("--function", choices=FUNCTIONS, default="constant")
    sub.add_parser("decompose", parents=[common], help="multiplicities in Ind 1 and checksums")
    sub.add_parser("orbits", parents=[common], help="canonical K-orbit representatives")
    sub.add_parser("chars", parents=[common], help="character counts per multiplicity case")
    return parser


def _message(exc: Gl3TraceError) -> str:
    params = {"detail": str(exc), **exc.params}
    return translate(exc.message_key, settings.LANGUAGE, **params)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse завершает с кодом 2, который занят под бюджет
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG
    configure_logging()
    lang = settings.LANGUAGE
    try:
        config = RunConfig(
            p=args.p, n=args.n, poly=args.poly, delta_rule=args.delta_rule, seed=args.seed,
            num_f=args.num_f, budget=args.budget, f_table=args.f_table, out=args.out,
            format=args.format, function=getattr(args, "function", "constant"),
        )
        command = COMMANDS[args.command]
        if args.command == "orbital":
            result: CommandResult = command(config, descriptor=args.descriptor, list_classes=args.list_classes)
        else:
            result = command(config)
    except ValidationError as exc:
        print(translate("errors.configuration", lang, detail=str(exc)), file=sys.stderr)
        return EXIT_CONFIG
    except ConfigurationError as exc:
        print(_message(exc), file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceeded as exc:
        print(_message(exc), file=sys.stderr)
        print(translate("cli.budget_hint", lang, limit=exc.limit), file=sys.stderr)
        return EXIT_BUDGET

    path = write_output(result.text, config.out, result.default_name)
    if path is None:
        sys.stdout.write(result.text)
    else:
        print(translate("cli.report_written", lang, path=path), file=sys.stderr)
    if result.exit_code == EXIT_IDENTITY_FAILED:
        print(translate("cli.identity_failed", lang, failed=", ".join(result.failures)), file=sys.stderr)
    return result.exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
