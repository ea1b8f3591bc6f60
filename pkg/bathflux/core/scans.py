"""Barridos temporales, comprobación energía-corriente y análisis de envolventes"""

from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from bathflux.constants import CONSISTENCY_RTOL, ERROR_INCREASING_GRID
from bathflux.core.currents import evaluate
from bathflux.core.numerics import exponential_fit, finite_difference_derivative, peak_envelope, power_law_fit
from bathflux.exceptions import InvalidInput
from bathflux.logging_config import get_logger
from bathflux.schemas.bath import Divergent
from bathflux.schemas.model import ConsistencyReport, CurrentSample, ModelSpec, ScanResult
from bathflux.schemas.numerics import EnvelopeLaw, FitResult

logger = get_logger(__name__)

QUANTITIES = ("j_t", "j_ti", "e_t", "e_ti")
# Nodos descartados en cada extremo al comparar con la derivada numérica
_EDGE_POINTS = 2


def _strict_grid(t_grid: Sequence[float]) -> np.ndarray:
    grid = np.asarray(t_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise InvalidInput("Time grid must be a nonempty sequence")
    if np.any(np.diff(grid) <= 0):
        raise InvalidInput(ERROR_INCREASING_GRID)
    return grid


def _metadata(model: ModelSpec) -> Dict[str, object]:
    return {
        "mode": model.mode.value,
        "jti_variant": model.jti_variant.value,
        "initial": model.initial.value,
        "bath": model.bath.kind,
        "uv_cutoff": model.bath.uv_cutoff,
        "ir_cutoff": model.bath.ir_cutoff,
    }


def _sample_value(column: Union[np.ndarray, Divergent], index: int, name: str, model: ModelSpec):
    if isinstance(column, Divergent):
        return column
    value = float(column[index])
    if np.isnan(value):
        return Divergent(kernel=name, spectrum=model.bath.kind, reason="divergent moment at t = 0")
    return value


def scan(model: ModelSpec, t_grid: Sequence[float]) -> ScanResult:
    """Evaluar j_t, j_ti, e_t y e_ti en cada instante de una malla creciente"""
    grid = _strict_grid(t_grid)
    columns = evaluate(model, grid)
    samples = [
        CurrentSample(t=float(t), **{name: _sample_value(columns[name], i, name, model) for name in QUANTITIES})
        for i, t in enumerate(grid)
    ]
    divergent = [name for name in QUANTITIES if isinstance(columns[name], Divergent)]
    if divergent:
        logger.info("Divergent quantities in scan", extra={"quantities": divergent, "bath": model.bath.kind})
    return ScanResult(model=model, samples=samples, metadata=_metadata(model))


def column_array(result: ScanResult, name: str) -> np.ndarray:
    """Columna numérica de un barrido (NaN en las entradas divergentes)"""
    return np.array([np.nan if isinstance(v, Divergent) else v for v in result.column(name)], dtype=float)


def consistency_check(model: ModelSpec, t_grid: Sequence[float], rtol: float = CONSISTENCY_RTOL) -> ConsistencyReport:
    """
    Comparar J = J_T + J_TI con d(E_T + E_TI)/dt sobre el interior de la malla.

    Las magnitudes divergentes se informan y no se comparan.
    """
    grid = _strict_grid(t_grid)
    columns = evaluate(model, grid)
    step = float(np.mean(np.diff(grid))) if grid.size > 1 else 0.0
    divergent = [name for name in QUANTITIES if isinstance(columns[name], Divergent)]
    if divergent or step <= 0:
        return ConsistencyReport(
            variant=model.jti_variant, step=step if step > 0 else 1.0,
            tolerance=rtol, passed=False, divergent_components=divergent
        )

    current = columns["j_t"] + columns["j_ti"]
    energy = columns["e_t"] + columns["e_ti"]
    derivative = finite_difference_derivative(grid, energy)
    interior = slice(_EDGE_POINTS, grid.size - _EDGE_POINTS)
    residual = float(np.max(np.abs(current[interior] - derivative[interior])))
    scale = float(np.max(np.abs(current)))
    relative = residual / scale if scale > 0 else residual
    passed = residual <= rtol * scale if scale > 0 else residual <= 1e-14

    logger.info(
        "Consistency check",
        extra={"variant": model.jti_variant.value, "relative_residual": relative, "passed": passed}
    )
    return ConsistencyReport(
        variant=model.jti_variant, step=step, max_residual=residual, max_current=scale,
        relative_residual=relative, tolerance=rtol, passed=passed
    )


def envelope_analysis(
    times: Sequence[float],
    values: Sequence[float],
    window: Tuple[float, float],
    law: EnvelopeLaw = EnvelopeLaw.POWER,
    levels: int = 1
) -> FitResult:
    """Extraer la envolvente de picos de |values| y ajustar la ley pedida en la ventana"""
    envelope = peak_envelope(times, values, levels=levels)
    if law == EnvelopeLaw.EXPONENTIAL:
        return exponential_fit(envelope, window)
    return power_law_fit(envelope, window)


def scan_envelope(
    result: ScanResult,
    column: str,
    window: Tuple[float, float],
    law: EnvelopeLaw = EnvelopeLaw.POWER,
    levels: int = 1
) -> FitResult:
    """Envolvente de una columna de un barrido"""
    values = column_array(result, column)
    if np.any(np.isnan(values)):
        raise InvalidInput(f"Column {column} is divergent and cannot be fitted")
    times: List[float] = [s.t for s in result.samples]
    return envelope_analysis(times, values, window, law=law, levels=levels)
