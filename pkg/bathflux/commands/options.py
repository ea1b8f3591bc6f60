"""Opciones compartidas por los subcomandos que leen una configuración"""

import argparse

from bathflux.schemas.model import EvaluationMode, JtiVariant
from bathflux.schemas.run import RunConfig
from bathflux.utils.loaders import load_run_config


def add_config_options(parser: argparse.ArgumentParser) -> None:
    """Registrar --config y los flags que sustituyen campos de la configuración"""
    parser.add_argument("--config", required=True, help="Fichero JSON con la configuración de ejecución")
    parser.add_argument("--out", default=None, help="Fichero (o directorio en sweep) de salida; stdout si se omite")
    parser.add_argument("--reproducible", action="store_true", help="Omitir la marca de tiempo de la cabecera")
    parser.add_argument("--mode", choices=[m.value for m in EvaluationMode], default=None)
    parser.add_argument("--jti-variant", dest="jti_variant", choices=[v.value for v in JtiVariant], default=None)
    parser.add_argument("--uv-cutoff", dest="uv_cutoff", type=float, default=None)
    parser.add_argument("--ir-cutoff", dest="ir_cutoff", type=float, default=None)


def load_from_args(args: argparse.Namespace) -> RunConfig:
    return load_run_config(
        args.config,
        mode=args.mode,
        jti_variant=args.jti_variant,
        uv_cutoff=args.uv_cutoff,
        ir_cutoff=args.ir_cutoff,
        out=args.out,
    )
