"""Escritura y lectura de tablas de resultados (CSV y JSON)"""

import json
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, TextIO, Tuple, Union

import numpy as np
import pandas as pd

from bathflux.config import get_settings
from bathflux.constants import (
    CSV_COLUMNS, DIVERGENT_TOKEN, ERROR_DIVERGENT_COLUMN, ERROR_NON_NUMERIC_COLUMN, ERROR_UNKNOWN_COLUMN, FLAGS_COLUMN,
    FLOAT_FORMAT, METADATA_PREFIX
)
from bathflux.exceptions import ConfigException, InvalidInput
from bathflux.schemas.bath import Divergent
from bathflux.schemas.model import ScanResult


def _cell(value: Union[float, Divergent]) -> str:
    if isinstance(value, Divergent):
        return DIVERGENT_TOKEN
    return FLOAT_FORMAT % value


def _header(result: ScanResult, reproducible: bool) -> List[str]:
    settings = get_settings()
    lines = [
        f"{settings.app_name} {settings.app_version}",
        f"model: {result.model.model_dump_json()}",
        f"metadata: {json.dumps(result.metadata, sort_keys=True)}",
    ]
    if not reproducible:
        lines.append(f"generated: {datetime.now(timezone.utc).isoformat()}")
    return [METADATA_PREFIX + line for line in lines]


def result_frame(result: ScanResult) -> pd.DataFrame:
    """Tabla de texto con las columnas fijas y la columna de flags"""
    rows = [
        [_cell(sample.t)] + [_cell(getattr(sample, name)) for name in CSV_COLUMNS[1:]] + [";".join(sample.flags)]
        for sample in result.samples
    ]
    return pd.DataFrame(rows, columns=list(CSV_COLUMNS) + [FLAGS_COLUMN])


def write_csv(result: ScanResult, stream: TextIO, reproducible: bool = False) -> None:
    """Escribir la cabecera de metadatos '#' seguida de la tabla"""
    for line in _header(result, reproducible):
        stream.write(line + "\n")
    result_frame(result).to_csv(stream, index=False, lineterminator="\n")


def _json_value(value: Union[float, Divergent]) -> Union[float, str]:
    return DIVERGENT_TOKEN if isinstance(value, Divergent) else value


def result_document(result: ScanResult, reproducible: bool = False) -> Dict[str, Any]:
    """Documento JSON con el modelo completo y las muestras"""
    document: Dict[str, Any] = {
        "version": get_settings().app_version,
        "model": result.model.model_dump(mode="json"),
        "metadata": result.metadata,
        "samples": [
            {
                "t": sample.t,
                **{name: _json_value(getattr(sample, name)) for name in CSV_COLUMNS[1:]},
                FLAGS_COLUMN: sample.flags,
            }
            for sample in result.samples
        ],
    }
    if not reproducible:
        document["generated"] = datetime.now(timezone.utc).isoformat()
    return document


def write_json(result: ScanResult, stream: TextIO, reproducible: bool = False) -> None:
    stream.write(json.dumps(result_document(result, reproducible), indent=2, sort_keys=True))
    stream.write("\n")


def write_result(result: ScanResult, stream: TextIO, fmt: str = "csv", reproducible: bool = False) -> None:
    """Escribir un barrido en el formato pedido"""
    if fmt == "json":
        write_json(result, stream, reproducible)
    else:
        write_csv(result, stream, reproducible)


def write_result_file(result: ScanResult, path: Union[str, Path], fmt: str = "csv", reproducible: bool = False) -> Path:
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    with open(target, "w", encoding="utf-8", newline="") as handle:
        write_result(result, handle, fmt, reproducible)
    return target


def read_metadata(path: Union[str, Path]) -> Dict[str, str]:
    """Líneas de cabecera '#' como pares clave/valor"""
    metadata: Dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            if not line.startswith(METADATA_PREFIX.strip()):
                break
            key, _, value = line[len(METADATA_PREFIX):].rstrip("\n").partition(": ")
            if value:
                metadata[key] = value
    return metadata


def read_result_table(path: Union[str, Path]) -> pd.DataFrame:
    """Leer una tabla CSV escrita por write_csv; las celdas se mantienen como texto"""
    try:
        return pd.read_csv(path, comment="#", dtype=str, keep_default_na=False)
    except FileNotFoundError:
        raise ConfigException(f"Result file not found: {path}")


def read_column(path: Union[str, Path], column: str, time_column: str = "t") -> Tuple[np.ndarray, np.ndarray]:
    """
    Leer una columna numérica junto a la columna de tiempos.

    Raises:
        InvalidInput: Si la columna no existe o contiene celdas DIVERGENT o no numéricas
    """
    frame = read_result_table(path)
    for name in (time_column, column):
        if name not in frame.columns:
            raise InvalidInput(ERROR_UNKNOWN_COLUMN.format(column=name, path=path))
    if (frame[column] == DIVERGENT_TOKEN).any():
        raise InvalidInput(ERROR_DIVERGENT_COLUMN.format(column=column))
    parsed = []
    for name in (time_column, column):
        try:
            parsed.append(frame[name].astype(float).to_numpy())
        except ValueError as e:
            raise InvalidInput(ERROR_NON_NUMERIC_COLUMN.format(column=name, path=path, detail=e))
    return parsed[0], parsed[1]
