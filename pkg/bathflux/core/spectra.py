"""
Densidades espectrales del baño, integrales trigonométricas ponderadas
(kernels), clasificación de convergencia y factor de Debye-Waller.

Reemplazo al continuo: Σ_α |Γ_α|² h(ω_α) ↦ |Γ|² ∫ρ(ω) h(ω) dω.
"""

import math
from typing import Callable, Dict, Literal, Optional, Tuple, Union

import numpy as np
from scipy import integrate

from bathflux.constants import (
    COTH_LAURENT_THRESHOLD, ERROR_MISSING_BETA, ERROR_NEGATIVE_FREQUENCY
)
from bathflux.core.numerics import oscillatory_integral
from bathflux.exceptions import InvalidInput, NonConvergent, NumericalError
from bathflux.logging_config import get_logger
from bathflux.schemas.bath import (
    ConvergenceClass, Divergent, KernelKind, LorentzDrude, Ohmic, ThermalParams, WhiteNoise
)
from bathflux.schemas.numerics import Trig

logger = get_logger(__name__)

Spectrum = Union[LorentzDrude, Ohmic, WhiteNoise]
Values = Union[float, np.ndarray]
KernelValue = Union[float, np.ndarray, Divergent]
Method = Literal["auto", "quadrature"]

_FINITE, _CONDITIONAL, _DIVERGENT = (
    ConvergenceClass.FINITE, ConvergenceClass.CONDITIONAL, ConvergenceClass.DIVERGENT
)

# Tabla de clasificación sin cortes
_CLASSIFICATION: Dict[str, Dict[KernelKind, ConvergenceClass]] = {
    "lorentz_drude": {
        KernelKind.SIN: _CONDITIONAL,
        KernelKind.WCOS: _CONDITIONAL,
        KernelKind.COTH_WSIN: _CONDITIONAL,
        KernelKind.W2SIN: _DIVERGENT,
        KernelKind.W_ONEMCOS: _DIVERGENT,
        KernelKind.COTH_W2COS: _DIVERGENT,
        KernelKind.MOMENT1: _DIVERGENT,
    },
    "ohmic": {kind: _FINITE for kind in KernelKind},
    "white_noise": {
        KernelKind.SIN: _FINITE,
        KernelKind.WCOS: _FINITE,
        KernelKind.W2SIN: _FINITE,
        KernelKind.W_ONEMCOS: _FINITE,
        KernelKind.MOMENT1: _FINITE,
        # coth ~ 2T/ω contra ρ = 1: se tratan como divergentes sin corte infrarrojo
        KernelKind.COTH_WSIN: _DIVERGENT,
        KernelKind.COTH_W2COS: _DIVERGENT,
    },
}

_SIN_TYPE = (KernelKind.SIN, KernelKind.W2SIN, KernelKind.COTH_WSIN)

# Taylor de ruido blanco por debajo de este Ωt
_WN_TAYLOR_THRESHOLD = 1e-2


def _check_frequency(omega: Values) -> np.ndarray:
    w = np.asarray(omega, dtype=float)
    if np.any(w < 0):
        raise InvalidInput(ERROR_NEGATIVE_FREQUENCY)
    return w


def _support_mask(spec: Spectrum, w: np.ndarray) -> np.ndarray:
    lower, upper = spec.support
    mask = w >= lower
    if isinstance(spec, WhiteNoise):
        mask &= w > 0
    if upper is not None:
        mask &= w <= upper
    return mask


def _density_over_omega(spec: Spectrum, w: np.ndarray) -> np.ndarray:
    """ρ(ω)/ω sin máscara de soporte"""
    if isinstance(spec, LorentzDrude):
        return 1.0 / (spec.omega_d ** 2 + w ** 2)
    if isinstance(spec, Ohmic):
        return 0.5 * math.pi * np.exp(-w / spec.omega_c)
    with np.errstate(divide="ignore"):
        return 1.0 / w


def spectral_density(spec: Spectrum, omega: Values) -> Values:
    """
    Densidad espectral ρ(ω), nula fuera del soporte.

    Raises:
        InvalidInput: ω < 0
    """
    w = _check_frequency(omega)
    if isinstance(spec, WhiteNoise):
        raw = np.ones_like(w)
    else:
        raw = w * _density_over_omega(spec, w)
    value = np.where(_support_mask(spec, w), raw, 0.0)
    return float(value) if value.ndim == 0 else value


def omega_coth(beta: float, omega: Values) -> Values:
    """ω·coth(βω/2), con la forma de Laurent 2/β + βω²/6 cuando βω < 1e−3"""
    w = np.asarray(omega, dtype=float)
    x = beta * w
    small = x < COTH_LAURENT_THRESHOLD
    safe = np.where(small, 1.0, x)
    value = np.where(small, 2.0 / beta + beta * w ** 2 / 6.0, w / np.tanh(0.5 * safe))
    return float(value) if value.ndim == 0 else value


def coth_half(beta: float, omega: Values) -> Values:
    """coth(βω/2) con la forma de Laurent 2/(βω) + βω/6 cerca de ω = 0"""
    w = np.asarray(omega, dtype=float)
    x = beta * w
    small = x < COTH_LAURENT_THRESHOLD
    safe = np.where(small, 1.0, x)
    with np.errstate(divide="ignore"):
        value = np.where(small, 2.0 / x + x / 6.0, 1.0 / np.tanh(0.5 * safe))
    return float(value) if value.ndim == 0 else value


def convergence_class(spec: Spectrum, kind: KernelKind) -> ConvergenceClass:
    """Clasificación de un kernel; los cortes llevan las celdas afectadas a FINITE"""
    base = _CLASSIFICATION[spec.kind][kind]
    if isinstance(spec, LorentzDrude) and spec.uv_cutoff is not None:
        return _FINITE
    if isinstance(spec, WhiteNoise) and spec.ir_cutoff is not None:
        return _FINITE
    return base


def debye_waller_class(spec: Spectrum) -> ConvergenceClass:
    """Clasificación de ∫ρ coth(βω/2) dω"""
    if isinstance(spec, LorentzDrude):
        return _FINITE if spec.uv_cutoff is not None else _DIVERGENT
    if isinstance(spec, WhiteNoise):
        return _FINITE if spec.ir_cutoff is not None else _DIVERGENT
    return _FINITE


def _divergent(spec: Spectrum, name: str, reason: str) -> Divergent:
    return Divergent(kernel=name, spectrum=spec.kind, reason=reason)


def _closed_form_available(spec: Spectrum, kind: KernelKind) -> bool:
    if spec.truncated or kind.thermal:
        return False
    if isinstance(spec, LorentzDrude):
        return kind in (KernelKind.SIN, KernelKind.WCOS)
    return True


def _moment1_closed(spec: Spectrum) -> float:
    if isinstance(spec, Ohmic):
        return math.pi * spec.omega_c ** 3
    return 0.5 * spec.omega_max ** 2


def _closed_kernel(spec: Spectrum, kind: KernelKind, t: np.ndarray) -> np.ndarray:
    """Formas cerradas de los kernels no térmicos sin cortes"""
    if kind == KernelKind.MOMENT1:
        return np.full(t.shape, _moment1_closed(spec))

    if isinstance(spec, LorentzDrude):
        wd = spec.omega_d
        decay = 0.5 * math.pi * np.exp(-wd * t)
        if kind == KernelKind.SIN:
            return np.where(t == 0, 0.0, decay)
        # WCOS en t = 0 es el primer momento, divergente
        return np.where(t == 0, np.nan, -wd * decay)

    if isinstance(spec, Ohmic):
        c = spec.omega_c
        u = 1.0 + (c * t) ** 2
        if kind == KernelKind.SIN:
            return math.pi * c ** 3 * t / u ** 2
        wcos = math.pi * c ** 3 * (1.0 - 3.0 * (c * t) ** 2) / u ** 3
        if kind == KernelKind.WCOS:
            return wcos
        if kind == KernelKind.W2SIN:
            return 12.0 * math.pi * c ** 5 * t * (1.0 - (c * t) ** 2) / u ** 4
        return math.pi * c ** 3 - wcos

    omega = spec.omega_max
    x = omega * t
    small = x < _WN_TAYLOR_THRESHOLD
    ts = np.where(small, 1.0, t)
    sin_x, cos_x = np.sin(omega * ts), np.cos(omega * ts)
    if kind == KernelKind.SIN:
        exact = (1.0 - cos_x) / ts
        series = omega ** 2 * t / 2.0 - omega ** 4 * t ** 3 / 24.0
    elif kind in (KernelKind.WCOS, KernelKind.W_ONEMCOS):
        exact = omega * sin_x / ts + (cos_x - 1.0) / ts ** 2
        series = omega ** 2 / 2.0 - omega ** 4 * t ** 2 / 8.0
    else:
        exact = -omega ** 2 * cos_x / ts + 2.0 * omega * sin_x / ts ** 2 + 2.0 * (cos_x - 1.0) / ts ** 3
        series = omega ** 4 * t / 4.0 - omega ** 6 * t ** 3 / 36.0
    value = np.where(small, series, exact)
    if kind == KernelKind.W_ONEMCOS:
        return 0.5 * omega ** 2 - value
    return value


def _quadrature_weight(spec: Spectrum, kind: KernelKind, beta: Optional[float]) -> Tuple[Callable, Trig]:
    """Peso ω ↦ ρ(ω)·g(ω) y factor trigonométrico de cada kernel"""
    def rho(w):
        w = np.asarray(w, dtype=float)
        raw = np.ones_like(w) if isinstance(spec, WhiteNoise) else w * _density_over_omega(spec, w)
        return np.where(_support_mask(spec, w), raw, 0.0)

    table = {
        KernelKind.SIN: (lambda w: rho(w), Trig.SIN),
        KernelKind.WCOS: (lambda w: rho(w) * w, Trig.COS),
        KernelKind.W2SIN: (lambda w: rho(w) * w ** 2, Trig.SIN),
        KernelKind.COTH_WSIN: (lambda w: rho(w) * omega_coth(beta, w), Trig.SIN),
        KernelKind.COTH_W2COS: (lambda w: rho(w) * w * omega_coth(beta, w), Trig.COS),
    }
    return table[kind]


def _moment(spec: Spectrum, integrand: Callable[[float], float]) -> float:
    lower, upper = spec.support
    value, _ = integrate.quad(integrand, lower, np.inf if upper is None else upper, limit=500)
    return float(value)


def _quadrature_kernel(spec: Spectrum, kind: KernelKind, t: np.ndarray, beta: Optional[float]) -> np.ndarray:
    """Kernel por cuadratura regularizada, punto a punto"""
    lower, upper = spec.support
    # Con corte ultravioleta la escala del peso es el propio corte
    scale = spec.characteristic_frequency if upper is None else max(spec.characteristic_frequency, upper)
    rho = lambda w: float(spectral_density(spec, w))

    if kind in (KernelKind.MOMENT1, KernelKind.W_ONEMCOS):
        moment = _moment(spec, lambda w: rho(w) * w)
        if kind == KernelKind.MOMENT1:
            return np.full(t.shape, moment)
        return moment - _quadrature_kernel(spec, KernelKind.WCOS, t, beta)

    weight, trig = _quadrature_weight(spec, kind, beta)
    out = np.empty(t.shape)
    for index, value in np.ndenumerate(t):
        if value == 0:
            if kind in _SIN_TYPE:
                out[index] = 0.0
            else:
                # cos en t = 0: el momento correspondiente
                out[index] = _moment(spec, lambda w: float(weight(w)))
            continue
        estimate = oscillatory_integral(
            weight, trig, float(value), lower=lower, upper=upper, scale=scale
        )
        out[index] = estimate.value
    return out


def kernel(
    spec: Spectrum,
    kind: KernelKind,
    t: Values,
    beta: Optional[float] = None,
    *,
    method: Method = "auto"
) -> KernelValue:
    """
    Integral K(t) = ∫ρ(ω)·g_K(ω, t) dω.

    Usa la forma cerrada cuando existe (espectro sin cortes); si no,
    cuadratura regularizada. Devuelve Divergent (no lanza) cuando el
    kernel no tiene límite regularizado finito. En t = 0 los kernels
    tipo seno valen 0 y los tipo coseno su momento.

    Raises:
        InvalidInput: t < 0 o falta β en un kernel térmico
        NumericalError: la cuadratura no converge en un kernel finito
    """
    if kind.thermal and beta is None:
        raise InvalidInput(ERROR_MISSING_BETA.format(kind=kind.value))
    grid = np.asarray(t, dtype=float)
    if np.any(grid < 0) or not np.all(np.isfinite(grid)):
        raise InvalidInput("Kernel time must be finite and nonnegative")

    cls = convergence_class(spec, kind)
    if cls == _DIVERGENT:
        return _divergent(spec, kind.value, "no finite regulated limit without a cutoff")

    if method == "auto" and _closed_form_available(spec, kind):
        value = _closed_kernel(spec, kind, grid)
    else:
        try:
            value = _quadrature_kernel(spec, kind, grid, beta)
        except NonConvergent as e:
            logger.warning(
                "Kernel quadrature did not converge",
                extra={"kernel": kind.value, "spectrum": spec.kind}
            )
            raise NumericalError(e.detail) from e

    value = np.asarray(value, dtype=float)
    if value.ndim == 0:
        if math.isnan(value):
            return _divergent(spec, kind.value, "cosine kernel at t = 0 equals a divergent moment")
        return float(value)
    # NaN marca los instantes aislados sin valor finito (t = 0)
    return value


def debye_waller(spec: Spectrum, thermal: ThermalParams) -> Union[float, Divergent]:
    """
    ⟨D(Γ)⟩_eq = exp(−½|Γ|² ∫ρ(ω) coth(βω/2) dω).

    Devuelve 1 si gamma_sq = 0 y Divergent según la clasificación.
    """
    if thermal.gamma_sq == 0:
        return 1.0
    if debye_waller_class(spec) == _DIVERGENT:
        return _divergent(spec, "debye_waller", "thermal displacement integral diverges without a cutoff")

    beta = thermal.beta

    def integrand(w: float) -> float:
        w_arr = np.asarray(w, dtype=float)
        if not _support_mask(spec, w_arr):
            return 0.0
        return float(_density_over_omega(spec, w_arr) * omega_coth(beta, w_arr))

    integral = _moment(spec, integrand)
    if not math.isfinite(integral):
        raise NumericalError("Debye-Waller integral is not finite")
    return math.exp(-0.5 * thermal.gamma_sq * integral)
