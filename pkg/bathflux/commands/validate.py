import argparse

import pandas as pd

from bathflux.constants import EXIT_NUMERICAL_ERROR, EXIT_OK
from bathflux.core.validation import run_validation
from bathflux.middleware.timing import timed
from bathflux.schemas.validation import ValidationLevel


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "validate",
        help="Ejecutar el conjunto de oráculos numéricos",
        description="Compara formas cerradas con caminos numéricos y comprueba las leyes de escala"
    )
    parser.add_argument("--level", choices=[level.value for level in ValidationLevel], default="quick")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    """Imprimir la tabla de resultados; código 0 solo si todas las comprobaciones pasan"""
    with timed("validate", level=args.level):
        results = run_validation(ValidationLevel(args.level))

    table = pd.DataFrame(
        [
            {
                "check": r.name,
                "status": "PASS" if r.passed else "FAIL",
                "seconds": f"{r.elapsed:.2f}",
                "detail": r.detail,
            }
            for r in results
        ]
    )
    print(table.to_string(index=False))
    failed = sum(not r.passed for r in results)
    print(f"\n{len(results) - failed}/{len(results)} checks passed")
    return EXIT_OK if failed == 0 else EXIT_NUMERICAL_ERROR
