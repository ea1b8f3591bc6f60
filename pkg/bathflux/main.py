import argparse
import sys
from typing import List, Optional

from pydantic import ValidationError

from bathflux.commands import current, envelope, sweep, validate
from bathflux.config import get_settings
from bathflux.constants import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR, EXIT_OK
from bathflux.exceptions import BathfluxException
from bathflux.logging_config import get_logger, setup_logging

logger = get_logger(__name__)

COMMANDS = (current, envelope, sweep, validate)


def build_parser() -> argparse.ArgumentParser:
    """Construir el parser con un subcomando por módulo de commands/"""
    settings = get_settings()
    parser = argparse.ArgumentParser(
        prog=settings.app_name,
        description="Energía y corriente de un baño acoplado a una cadena de espines"
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {settings.app_version}")
    parser.add_argument(
        "--log-level",
        dest="log_level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        default=settings.log_level,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """
    Punto de entrada de la CLI.

    Returns:
        0 si todo va bien, 2 para errores de configuración, 3 para fallos numéricos
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_CONFIG_ERROR

    setup_logging(args.log_level)
    try:
        return args.handler(args)
    except BathfluxException as e:
        logger.error("Command failed", extra={"command": args.command, "detail": e.detail})
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        logger.error("Invalid input", extra={"command": args.command, "errors": e.error_count()})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except Exception as e:
        logger.exception("Unexpected failure", extra={"command": args.command})
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NUMERICAL_ERROR
