import argparse

from bathflux.constants import EXIT_OK
from bathflux.core.scans import envelope_analysis
from bathflux.middleware.timing import timed
from bathflux.schemas.numerics import EnvelopeLaw
from bathflux.utils.io import read_column


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "envelope",
        help="Ajustar la envolvente de picos de una columna",
        description="Lee un CSV de resultados y ajusta una ley de potencias o exponencial a |columna|"
    )
    parser.add_argument("--csv", required=True, help="CSV escrito por el subcomando current")
    parser.add_argument("--column", required=True, help="Columna a ajustar (j_t, j_ti, e_t, e_ti)")
    parser.add_argument("--window", nargs=2, type=float, required=True, metavar=("TMIN", "TMAX"))
    parser.add_argument("--levels", type=int, default=1, help="Niveles de extracción de picos")
    parser.add_argument("--law", choices=[law.value for law in EnvelopeLaw], default=EnvelopeLaw.POWER.value)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Imprimir el FitResult como JSON"""
    times, values = read_column(args.csv, args.column)
    with timed("envelope", column=args.column, law=args.law):
        fit = envelope_analysis(
            times, values, tuple(args.window), law=EnvelopeLaw(args.law), levels=args.levels
        )
    print(fit.model_dump_json(indent=2))
    return EXIT_OK
