import argparse
import sys
from pathlib import Path

from bathflux.commands.options import add_config_options, load_from_args
from bathflux.constants import EXIT_OK
from bathflux.core.scans import scan
from bathflux.logging_config import get_logger
from bathflux.middleware.timing import timed
from bathflux.utils.io import write_result, write_result_file
from bathflux.utils.plotting import plot_currents

logger = get_logger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "current",
        help="Barrido temporal de corrientes y energías del baño",
        description="Evalúa j_t, j_ti, e_t y e_ti sobre la malla de la configuración"
    )
    add_config_options(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """
    Ejecutar el subcomando current.

    Escribe una fila por punto de la malla con cabecera de metadatos '#'.
    """
    config = load_from_args(args)
    output = config.output

    with timed("current", bath=config.model.bath.kind, n_points=config.grid.n_points):
        result = scan(config.model, config.grid.times())

    if output.path is None:
        write_result(result, sys.stdout, output.format, args.reproducible)
    else:
        write_result_file(result, output.path, output.format, args.reproducible)

    if output.emit_svg:
        if output.path is None:
            logger.warning("SVG output needs an output path; skipped")
        else:
            plot_currents(result, Path(output.path).with_suffix(".svg"))
    return EXIT_OK
