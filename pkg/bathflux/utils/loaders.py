"""Carga de configuraciones de ejecución y sustitución de campos"""

import copy
import json
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import ValidationError

from bathflux.constants import ERROR_CONFIG_DECODE, ERROR_CONFIG_NOT_FOUND
from bathflux.exceptions import ConfigException
from bathflux.logging_config import get_logger
from bathflux.schemas.run import RunConfig

logger = get_logger(__name__)

# Campos de la cadena de los que dependen los acoplamientos de una familia
_FAMILY_FIELDS = {"n_sites", "tau", "family", "pst_normalization"}


def read_json(path: Union[str, Path]) -> Dict[str, Any]:
    """Leer un fichero JSON de configuración"""
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except FileNotFoundError:
        raise ConfigException(ERROR_CONFIG_NOT_FOUND.format(path=path))
    except json.JSONDecodeError as e:
        raise ConfigException(ERROR_CONFIG_DECODE.format(detail=str(e)))
    if not isinstance(data, dict):
        raise ConfigException(ERROR_CONFIG_DECODE.format(detail="top level must be an object"))
    return data


def set_by_path(data: Dict[str, Any], path: str, value: Any) -> Dict[str, Any]:
    """
    Devolver una copia de `data` con el campo de la ruta con puntos sustituido.

    La ruta empieza por el nombre de la raíz (p. ej. model.chain.n_sites) y
    se resuelve desde el nivel superior de `data`. Al cambiar un campo de
    familia en una cadena no personalizada se descartan los acoplamientos
    para que se regeneren.
    """
    result = copy.deepcopy(data)
    parts = path.split(".")
    node = result
    for part in parts[:-1]:
        if not isinstance(node, dict) or part not in node:
            raise ConfigException(f"Unknown field path {path}")
        node = node[part]
    if not isinstance(node, dict) or parts[-1] not in node:
        raise ConfigException(f"Unknown field path {path}")
    node[parts[-1]] = value

    if len(parts) >= 2 and parts[-2] == "chain" and parts[-1] in _FAMILY_FIELDS:
        if node.get("family", "custom") != "custom":
            node.pop("couplings", None)
    return result


def apply_overrides(
    data: Dict[str, Any],
    mode: Optional[str] = None,
    jti_variant: Optional[str] = None,
    uv_cutoff: Optional[float] = None,
    ir_cutoff: Optional[float] = None,
    out: Optional[str] = None
) -> Dict[str, Any]:
    """Aplicar los flags de la CLI sobre la configuración en bruto"""
    result = copy.deepcopy(data)
    model = result.setdefault("model", {})
    if not isinstance(model, dict):
        raise ConfigException("Field model must be an object")
    if mode is not None:
        model["mode"] = mode
    if jti_variant is not None:
        model["jti_variant"] = jti_variant
    if uv_cutoff is not None or ir_cutoff is not None:
        bath = model.setdefault("bath", {})
        if not isinstance(bath, dict):
            raise ConfigException("Field model.bath must be an object")
        if uv_cutoff is not None:
            bath["uv_cutoff"] = uv_cutoff
        if ir_cutoff is not None:
            bath["ir_cutoff"] = ir_cutoff
    if out is not None:
        output = result.setdefault("output", {})
        if not isinstance(output, dict):
            raise ConfigException("Field output must be an object")
        output["path"] = out
    return result


def validate_run_config(data: Dict[str, Any]) -> RunConfig:
    """Validar un diccionario como RunConfig; los errores de validación son errores de configuración"""
    try:
        return RunConfig.model_validate(data)
    except ValidationError as e:
        logger.warning("Invalid run configuration", extra={"errors": e.error_count()})
        raise ConfigException(f"Invalid configuration: {e}")


def load_run_config(path: Union[str, Path], **overrides: Any) -> RunConfig:
    """
    Cargar y validar una configuración de ejecución.

    Args:
        path: Fichero JSON con los campos de RunConfig
        **overrides: mode, jti_variant, uv_cutoff, ir_cutoff, out

    Returns:
        RunConfig validada

    Raises:
        ConfigException: Si el fichero no existe, no es JSON o no valida
    """
    data = apply_overrides(read_json(path), **overrides)
    config = validate_run_config(data)
    logger.info("Run configuration loaded", extra={"path": str(path), "bath": config.model.bath.kind})
    return config
