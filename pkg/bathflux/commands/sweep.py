import argparse
import asyncio
import json
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import ValidationError

from bathflux.commands.options import add_config_options, load_from_args
from bathflux.config import get_settings
from bathflux.constants import EXIT_OK, SWEEP_INDEX_NAME
from bathflux.core.scans import scan
from bathflux.exceptions import ConfigException
from bathflux.logging_config import get_logger
from bathflux.middleware.timing import timed
from bathflux.schemas.model import ModelSpec
from bathflux.schemas.run import RunConfig
from bathflux.utils.io import write_result_file
from bathflux.utils.loaders import set_by_path
from bathflux.utils.plotting import plot_currents

logger = get_logger(__name__)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "sweep",
        help="Repetir el barrido temporal para cada valor de un parámetro",
        description="Escribe un fichero por valor del barrido y un index.json en el directorio --out"
    )
    add_config_options(parser)
    parser.set_defaults(handler=run)


def _format_value(value: Union[int, float]) -> str:
    return str(value) if isinstance(value, int) else f"{value:g}"


def sweep_models(config: RunConfig) -> List[ModelSpec]:
    """Un ModelSpec por valor del barrido, en el orden de la configuración"""
    base = {"model": config.model.model_dump(mode="json")}
    models = []
    for value in config.sweep.values:
        data = set_by_path(base, config.sweep.parameter, value)
        try:
            models.append(ModelSpec.model_validate(data["model"]))
        except ValidationError as e:
            raise ConfigException(f"Sweep value {value} gives an invalid model: {e}")
    return models


def _run_entry(model: ModelSpec, config: RunConfig, target: Path, value: Any, reproducible: bool) -> Path:
    with timed("sweep.entry", parameter=config.sweep.parameter, value=value):
        result = scan(model, config.grid.times())
        write_result_file(result, target, config.output.format, reproducible)
        if config.output.emit_svg:
            plot_currents(result, target.with_suffix(".svg"))
    return target


async def _run_all(
    models: List[ModelSpec], config: RunConfig, targets: List[Path], reproducible: bool
) -> List[Path]:
    """Evaluar las entradas en hilos, con concurrencia limitada por BATHFLUX_THREADS"""
    semaphore = asyncio.Semaphore(get_settings().threads)

    async def bounded(model: ModelSpec, target: Path, value: Any) -> Path:
        async with semaphore:
            return await asyncio.to_thread(_run_entry, model, config, target, value, reproducible)

    return await asyncio.gather(*[
        bounded(model, target, value)
        for model, target, value in zip(models, targets, config.sweep.values)
    ])


def run(args: argparse.Namespace) -> int:
    """Ejecutar el subcomando sweep"""
    config = load_from_args(args)
    if config.sweep is None:
        raise ConfigException("Sweep command needs a sweep section in the configuration")
    if config.output.path is None:
        raise ConfigException("Sweep command needs an output directory (--out or output.path)")

    out_dir = Path(config.output.path)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.config).stem
    field = config.sweep.parameter.split(".")[-1]
    targets = [
        out_dir / f"{stem}_{field}-{_format_value(value)}.{config.output.format}"
        for value in config.sweep.values
    ]
    models = sweep_models(config)

    with timed("sweep", parameter=config.sweep.parameter, entries=len(models)):
        written = asyncio.run(_run_all(models, config, targets, args.reproducible))

    index: Dict[str, Any] = {
        "parameter": config.sweep.parameter,
        "values": config.sweep.values,
        "files": [path.name for path in written],
        "grid": config.grid.model_dump(),
        "format": config.output.format,
    }
    with open(out_dir / SWEEP_INDEX_NAME, "w", encoding="utf-8", newline="") as handle:
        json.dump(index, handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info("Sweep index written", extra={"directory": str(out_dir), "files": len(written)})
    return EXIT_OK
