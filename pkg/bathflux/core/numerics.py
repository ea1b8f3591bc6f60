"""
Sustrato numérico: autovalores tridiagonales, funciones de Bessel,
cuadratura oscilatoria regularizada, diferencias finitas y ajustes de
envolventes.

Todas las funciones son puras y seguras para invocación concurrente.
"""

import math
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import integrate, linalg, signal, special, stats

from bathflux.config import get_settings
from bathflux.constants import (
    ENVELOPE_SKIP_PEAKS, ERROR_BESSEL_ORDER, ERROR_EMPTY_WINDOW, ERROR_INCREASING_GRID,
    ERROR_NON_CONVERGENT, ERROR_NON_FINITE, ERROR_NON_POSITIVE_VALUES,
    ERROR_NON_UNIFORM_GRID, ERROR_OFFDIAGONAL_LENGTH, ERROR_TOO_FEW_POINTS,
    EULER_AVERAGING_DEPTH, GAUSS_LEGENDRE_NODES, MIN_ENVELOPE_POINTS, MIN_FIT_POINTS,
    MIN_STENCIL_POINTS, NEAR_FIELD_QUAD_LIMIT, UNIFORM_GRID_RTOL
)
from bathflux.exceptions import InvalidInput, NonConvergent
from bathflux.logging_config import get_logger
from bathflux.schemas.numerics import EigenSystem, EnvelopeLaw, FitResult, QuadratureEstimate, Trig

logger = get_logger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]
Weight = Callable[[np.ndarray], np.ndarray]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(GAUSS_LEGENDRE_NODES)
# Paneles máximos cuando el soporte es finito y se recorre completo
_MAX_FINITE_PANELS = 200_000


def tridiag_eigh(diagonal: ArrayLike, offdiagonal: ArrayLike) -> EigenSystem:
    """
    Descomposición espectral completa de una matriz tridiagonal simétrica real.

    Args:
        diagonal: Elementos diagonales (N)
        offdiagonal: Elementos fuera de la diagonal (N−1)

    Returns:
        EigenSystem con autovalores ascendentes y autovectores ortonormales

    Raises:
        InvalidInput: Longitudes incompatibles o valores no finitos
    """
    d = np.asarray(diagonal, dtype=float)
    e = np.asarray(offdiagonal, dtype=float)
    if d.ndim != 1 or e.ndim != 1 or d.size == 0 or e.size != d.size - 1:
        raise InvalidInput(ERROR_OFFDIAGONAL_LENGTH)
    if not (np.all(np.isfinite(d)) and np.all(np.isfinite(e))):
        raise InvalidInput(ERROR_NON_FINITE)

    if d.size == 1:
        return EigenSystem(eigenvalues=d.copy(), eigenvectors=np.ones((1, 1)))

    eigenvalues, eigenvectors = linalg.eigh_tridiagonal(d, e)

    # Signo determinista: primera componente no nula positiva
    for k in range(eigenvectors.shape[1]):
        column = eigenvectors[:, k]
        pivot = np.flatnonzero(np.abs(column) > 1e-12)[0]
        if column[pivot] < 0:
            eigenvectors[:, k] = -column

    return EigenSystem(eigenvalues=eigenvalues, eigenvectors=eigenvectors)


def bessel_j(n: int, x: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Función de Bessel de primera especie J_n(x) de orden entero n ≥ 0"""
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 0:
        raise InvalidInput(ERROR_BESSEL_ORDER)
    value = special.jv(int(n), x)
    if np.ndim(value) == 0:
        return float(value)
    return value


def _neville_at_zero(eps: np.ndarray, values: np.ndarray) -> float:
    """Extrapolación polinómica de Neville al punto ε = 0"""
    p = values.astype(float).copy()
    n = len(eps)
    for level in range(1, n):
        for i in range(n - level):
            j = i + level
            p[i] = (eps[j] * p[i] - eps[i] * p[i + 1]) / (eps[j] - eps[i])
    return float(p[0])


def _iterated_average(partial_sums: np.ndarray) -> Tuple[float, float]:
    """Aceleración de una serie alternante promediando sumas parciales sucesivas"""
    s = partial_sums[-(EULER_AVERAGING_DEPTH + 1):].astype(float)
    previous = s[-1]
    while s.size > 1:
        previous = s[-1]
        s = 0.5 * (s[:-1] + s[1:])
    return float(s[0]), float(abs(s[0] - previous))


def _regulated_integral(
    weight: Weight,
    trig: Trig,
    t: float,
    eps: float,
    lower: float,
    upper: Optional[float],
    near_edge: float,
    far_panels: int
) -> Tuple[float, float]:
    """∫ weight(ω)·trig(ωt)·e^{−εω} dω con campo cercano adaptativo y paneles lejanos"""
    damped = lambda w: float(weight(w) * math.exp(-eps * w))
    near, near_error = integrate.quad(
        damped, lower, near_edge,
        weight=trig.value, wvar=t,
        limit=NEAR_FIELD_QUAD_LIMIT, epsabs=1e-15, epsrel=1e-12
    )
    if upper is not None and near_edge >= upper:
        return near, near_error

    half_period = math.pi / t
    k0 = int(round(near_edge / half_period))
    if upper is None:
        n_panels = far_panels
    else:
        n_panels = min(int(math.ceil((upper - near_edge) / half_period)), _MAX_FINITE_PANELS)
    left = (k0 + np.arange(n_panels)) * half_period
    right = left + half_period
    if upper is not None:
        right = np.minimum(right, upper)

    half_width = 0.5 * (right - left)
    nodes = (left + half_width)[:, None] + half_width[:, None] * _GL_NODES[None, :]
    phase = np.sin(nodes * t) if trig == Trig.SIN else np.cos(nodes * t)
    integrand = np.asarray(weight(nodes), dtype=float) * np.exp(-eps * nodes) * phase
    panels = half_width * (integrand @ _GL_WEIGHTS)

    if upper is not None:
        return near + float(np.sum(panels)), near_error
    far, far_error = _iterated_average(np.cumsum(panels))
    return near + far, near_error + far_error


def oscillatory_integral(
    weight: Weight,
    trig: Trig,
    t: float,
    regulator_schedule: Optional[Sequence[float]] = None,
    *,
    lower: float = 0.0,
    upper: Optional[float] = None,
    scale: float = 1.0,
    rtol: Optional[float] = None
) -> QuadratureEstimate:
    """
    Valor regularizado de Abel lim_{ε→0} ∫ weight(ω)·trig(ωt)·e^{−εω} dω.

    El campo cercano [lower, B] se integra con QUADPACK ponderado (sin/cos);
    el campo lejano por paneles de Gauss-Legendre entre ceros consecutivos
    kπ/t, acelerados como serie alternante. Los valores para cada ε se
    extrapolan a ε = 0 (Richardson/Neville).

    Args:
        weight: Función vectorizada ω → peso
        trig: SIN o COS
        t: Tiempo (> 0)
        regulator_schedule: Reguladores adimensionales descendentes; ε = s·min(1/scale, t)
        lower: Límite inferior de integración
        upper: Límite superior (None para ∞)
        scale: Frecuencia característica del peso
        rtol: Discrepancia relativa admitida entre extrapolantes

    Raises:
        InvalidInput: t ≤ 0
        NonConvergent: Los extrapolantes de 3 y 2 puntos no coinciden o alguna integral
            regularizada no es finita
    """
    settings = get_settings()
    schedule = tuple(settings.regulator_schedule if regulator_schedule is None else regulator_schedule)
    rtol = settings.quadrature_rtol if rtol is None else rtol
    if not t > 0 or not math.isfinite(t):
        raise InvalidInput("Oscillatory integral needs t > 0")

    half_period = math.pi / t
    target = max(settings.near_field_scales * scale, 8.0 * half_period, lower)
    near_edge = math.ceil(target / half_period) * half_period
    if upper is not None:
        near_edge = min(near_edge, upper)

    # Los coeficientes en ε crecen como max(scale, 1/t)^k
    unit = min(1.0 / scale, t)
    eps = np.array([e * unit for e in schedule])
    values = np.empty(len(eps))
    errors = np.empty(len(eps))
    for i, e in enumerate(eps):
        values[i], errors[i] = _regulated_integral(
            weight, trig, t, float(e), lower, upper, near_edge, settings.quadrature_far_panels
        )

    full = _neville_at_zero(eps, values)
    reduced = _neville_at_zero(eps[1:], values[1:])
    spread = abs(full - reduced)
    if not (np.all(np.isfinite(values)) and math.isfinite(spread)):
        raise NonConvergent(ERROR_NON_CONVERGENT.format(spread=spread))
    reference = max(abs(full), float(np.max(np.abs(values))) * 1e-3, 1e-300)
    logger.debug(
        "Regulated quadrature",
        extra={"t": t, "trig": trig.value, "values": values.tolist(), "spread": spread}
    )
    if spread > rtol * reference:
        raise NonConvergent(ERROR_NON_CONVERGENT.format(spread=spread))

    return QuadratureEstimate(
        value=full,
        error=float(spread + np.max(errors)),
        regulators=tuple(float(e) for e in eps)
    )


def _validate_grid(times: np.ndarray, minimum: int, require_uniform: bool = True) -> float:
    """Validar una malla creciente (y uniforme); devuelve el paso medio"""
    if times.ndim != 1 or times.size < minimum:
        raise InvalidInput(ERROR_TOO_FEW_POINTS.format(minimum=minimum, actual=times.size))
    if not np.all(np.isfinite(times)):
        raise InvalidInput(ERROR_NON_FINITE)
    steps = np.diff(times)
    if np.any(steps <= 0):
        raise InvalidInput(ERROR_INCREASING_GRID)
    h = float(steps.mean())
    if require_uniform:
        scale = max(abs(h), float(np.max(np.abs(times))))
        if np.max(np.abs(steps - h)) > UNIFORM_GRID_RTOL * scale:
            raise InvalidInput(ERROR_NON_UNIFORM_GRID)
    return h


def _strict_maxima(times: np.ndarray, magnitudes: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    if magnitudes.size < 3:
        return times[:0], magnitudes[:0]
    (index,) = signal.argrelmax(magnitudes)
    return times[index], magnitudes[index]


def peak_envelope(times: ArrayLike, values: ArrayLike, levels: int = 1) -> Tuple[np.ndarray, np.ndarray]:
    """
    Máximos locales estrictos de |values|.

    Con levels > 1 se repite la extracción sobre la secuencia de picos,
    quedando el pico dominante de cada periodo cuando la modulación tiene
    sub-picos.
    """
    t = np.asarray(times, dtype=float)
    v = np.abs(np.asarray(values, dtype=float))
    if t.shape != v.shape:
        raise InvalidInput("times and values must have the same length")
    _validate_grid(t, MIN_ENVELOPE_POINTS)
    if levels < 1:
        raise InvalidInput("levels must be at least 1")

    for _ in range(levels):
        t, v = _strict_maxima(t, v)
    return t, v


def _windowed(envelope: Tuple[ArrayLike, ArrayLike], window: Tuple[float, float]) -> Tuple[np.ndarray, np.ndarray]:
    t_min, t_max = window
    if not t_min < t_max:
        raise InvalidInput(ERROR_EMPTY_WINDOW)
    t = np.asarray(envelope[0], dtype=float)
    v = np.asarray(envelope[1], dtype=float)
    mask = (t >= t_min) & (t <= t_max)
    # Los primeros picos de la ventana arrastran transitorios
    t, v = t[mask][ENVELOPE_SKIP_PEAKS:], v[mask][ENVELOPE_SKIP_PEAKS:]
    if t.size < MIN_FIT_POINTS:
        raise InvalidInput(ERROR_TOO_FEW_POINTS.format(minimum=MIN_FIT_POINTS, actual=t.size))
    if np.any(v <= 0) or not np.all(np.isfinite(v)):
        raise InvalidInput(ERROR_NON_POSITIVE_VALUES)
    return t, v


def _line_fit(x: np.ndarray, y: np.ndarray, window: Tuple[float, float], law: EnvelopeLaw) -> FitResult:
    fit = stats.linregress(x, y)
    residual = y - (fit.intercept + fit.slope * x)
    return FitResult(
        exponent=float(fit.slope),
        log_prefactor=float(fit.intercept),
        residual_rms=float(np.sqrt(np.mean(residual ** 2))),
        window=(float(window[0]), float(window[1])),
        law=law,
        n_points=int(x.size)
    )


def power_law_fit(envelope: Tuple[ArrayLike, ArrayLike], window: Tuple[float, float]) -> FitResult:
    """Ajuste por mínimos cuadrados de log v frente a log t; exponent es la pendiente"""
    t, v = _windowed(envelope, window)
    return _line_fit(np.log(t), np.log(v), window, EnvelopeLaw.POWER)


def exponential_fit(envelope: Tuple[ArrayLike, ArrayLike], window: Tuple[float, float]) -> FitResult:
    """Ajuste de log v frente a t; la tasa de decaimiento es −exponent"""
    t, v = _windowed(envelope, window)
    return _line_fit(t, np.log(v), window, EnvelopeLaw.EXPONENTIAL)


def finite_difference_derivative(times: ArrayLike, values: ArrayLike) -> np.ndarray:
    """
    Derivada numérica sobre una malla uniforme.

    Esténcil centrado de 5 puntos en el interior, centrado de 3 puntos en
    los penúltimos nodos y unilateral de segundo orden en los extremos.
    """
    t = np.asarray(times, dtype=float)
    f = np.asarray(values)
    if f.shape != t.shape:
        raise InvalidInput("times and values must have the same length")
    h = _validate_grid(t, MIN_STENCIL_POINTS)

    df = np.empty_like(f, dtype=np.result_type(f.dtype, float))
    df[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    df[1] = (f[2] - f[0]) / (2.0 * h)
    df[-2] = (f[-1] - f[-3]) / (2.0 * h)
    df[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
    df[-1] = (3.0 * f[-1] - 4.0 * f[-2] + f[-3]) / (2.0 * h)
    return df
