"""
Ensamblado de energías y corrientes del baño a partir de los factores de
la cadena y los kernels espectrales, más las formas cerradas y leyes
asintóticas de casos particulares.

Con a el número de sitios inicialmente ocupados:

    E_T  = (1/a)·D·|Γ|²·[2·COTH_WSIN·ImF + 2·W_ONEMCOS·ReF]
    E_TI = (1/a)·|Γ|²·[(MOMENT1 − 2·WCOS)·|f₁₁|² + MOMENT1·G]
    J_T  = (2/a)·D·|Γ|²·[COTH_W2COS·ImF + COTH_WSIN·dImF + W2SIN·ReF + W_ONEMCOS·dReF]

En alta temperatura D = 1 y coth(βω/2) ≈ 2T/ω:

    E_T = (4T/a)·|Γ|²·SIN·ImF,  J_T = (4T/a)·|Γ|²·[SIN·dImF + WCOS·ImF]
"""

import math
from typing import Dict, Optional, Union

import numpy as np

from bathflux.constants import (
    ERROR_BATH_MISMATCH, ERROR_CHAIN_MISMATCH, ERROR_OSCILLATION_SIZE, ERROR_POLE_PROXIMITY,
    MIN_CHAIN_SITES, POLE_GUARD_RAD, ZERO_COEFFICIENT_TOL
)
from bathflux.core.chain import chain_factors, pst_closed_factors
from bathflux.core.spectra import debye_waller, kernel
from bathflux.exceptions import InvalidInput, PoleProximity
from bathflux.logging_config import get_logger
from bathflux.schemas.bath import Divergent, KernelKind, LorentzDrude, Ohmic, WhiteNoise
from bathflux.schemas.chain import ChainFactors, ChainFamily, InitialCase
from bathflux.schemas.model import EvaluationMode, JtiVariant, ModelSpec, RatioVariant

logger = get_logger(__name__)

Times = Union[float, np.ndarray]
Result = Union[float, np.ndarray, Divergent]
_Partial = Union[np.ndarray, Divergent]


def _term(coefficient: np.ndarray, value: Union[float, np.ndarray, Divergent]) -> _Partial:
    """coeficiente × kernel; un coeficiente despreciable anula incluso un kernel divergente"""
    coefficient = np.asarray(coefficient, dtype=float)
    negligible = np.abs(coefficient) <= ZERO_COEFFICIENT_TOL
    if isinstance(value, Divergent):
        return np.zeros(coefficient.shape) if np.all(negligible) else value
    with np.errstate(invalid="ignore"):
        product = coefficient * value
    # NaN: kernel sin valor finito en ese instante
    return np.where(negligible & np.isnan(product), 0.0, product)


def _sum(*terms: _Partial) -> _Partial:
    for term in terms:
        if isinstance(term, Divergent):
            return term
    return sum(terms[1:], terms[0])


def _finish(value: _Partial, prefactor: float) -> Result:
    if isinstance(value, Divergent):
        return value
    scaled = prefactor * np.asarray(value, dtype=float)
    return float(scaled) if scaled.ndim == 0 else scaled


class _Evaluation:
    """Factores de cadena y kernels compartidos por las cuatro magnitudes de un modelo"""

    def __init__(self, model: ModelSpec, t: Times):
        self.model = model
        self.grid = np.asarray(t, dtype=float)
        self.a = model.support
        self.gamma_sq = model.thermal.gamma_sq
        self.temperature = model.thermal.temperature
        self._factors: Optional[ChainFactors] = None
        self._kernels: Dict[KernelKind, Union[float, np.ndarray, Divergent]] = {}
        self._debye_waller: Optional[Union[float, Divergent]] = None

    @property
    def factors(self) -> ChainFactors:
        if self._factors is None:
            self._factors = chain_factors(self.model.chain, self.model.initial, self.grid)
        return self._factors

    def kernel(self, kind: KernelKind):
        if kind not in self._kernels:
            self._kernels[kind] = kernel(self.model.bath, kind, self.grid, self.model.thermal.beta)
        return self._kernels[kind]

    @property
    def debye_waller(self) -> Union[float, Divergent]:
        if self.model.mode == EvaluationMode.HIGH_T:
            return 1.0
        if self._debye_waller is None:
            self._debye_waller = debye_waller(self.model.bath, self.model.thermal)
        return self._debye_waller

    @property
    def _pure_quantum(self) -> bool:
        return self.model.initial == InitialCase.SITE1

    def _zero(self) -> Result:
        zero = np.zeros(self.grid.shape)
        return float(zero) if zero.ndim == 0 else zero

    def energy_t(self) -> Result:
        if self._pure_quantum:
            return self._zero()
        f = self.factors
        k = self.kernel
        if self.model.mode == EvaluationMode.HIGH_T:
            return _finish(_term(f.im_F, k(KernelKind.SIN)), 4.0 * self.temperature * self.gamma_sq / self.a)
        bracket = _sum(
            _term(2.0 * f.im_F, k(KernelKind.COTH_WSIN)),
            _term(2.0 * f.re_F, k(KernelKind.W_ONEMCOS)),
        )
        return self._dressed(bracket, self.gamma_sq / self.a)

    def current_t(self) -> Result:
        if self._pure_quantum:
            return self._zero()
        f = self.factors
        k = self.kernel
        if self.model.mode == EvaluationMode.HIGH_T:
            bracket = _sum(
                _term(f.d_im_F, k(KernelKind.SIN)),
                _term(f.im_F, k(KernelKind.WCOS)),
            )
            return _finish(bracket, 4.0 * self.temperature * self.gamma_sq / self.a)
        bracket = _sum(
            _term(f.im_F, k(KernelKind.COTH_W2COS)),
            _term(f.d_im_F, k(KernelKind.COTH_WSIN)),
            _term(f.re_F, k(KernelKind.W2SIN)),
            _term(f.d_re_F, k(KernelKind.W_ONEMCOS)),
        )
        return self._dressed(bracket, 2.0 * self.gamma_sq / self.a)

    def _dressed(self, bracket: _Partial, prefactor: float) -> Result:
        if isinstance(bracket, Divergent):
            return bracket
        return _finish(_term(bracket, self.debye_waller), prefactor)

    def energy_ti(self) -> Result:
        f = self.factors
        k = self.kernel
        bracket = _sum(
            _term(f.p11, k(KernelKind.MOMENT1)),
            _term(-2.0 * f.p11, k(KernelKind.WCOS)),
            _term(f.G, k(KernelKind.MOMENT1)),
        )
        return _finish(bracket, self.gamma_sq / self.a)

    def current_ti(self) -> Result:
        f = self.factors
        k = self.kernel
        if self.model.jti_variant == JtiVariant.AS_PRINTED:
            bracket = _sum(
                _term(2.0 * f.p11, k(KernelKind.W2SIN)),
                _term(f.dp11, k(KernelKind.W_ONEMCOS)),
                _term(f.dG, k(KernelKind.MOMENT1)),
            )
        else:
            bracket = _sum(
                _term(2.0 * f.p11, k(KernelKind.W2SIN)),
                _term(f.dp11, k(KernelKind.MOMENT1)),
                _term(-2.0 * f.dp11, k(KernelKind.WCOS)),
                _term(f.dG, k(KernelKind.MOMENT1)),
            )
        return _finish(bracket, self.gamma_sq / self.a)


def evaluate(model: ModelSpec, t: Times) -> Dict[str, Result]:
    """Las cuatro magnitudes (j_t, j_ti, e_t, e_ti) compartiendo factores y kernels"""
    ev = _Evaluation(model, t)
    return {
        "j_t": ev.current_t(),
        "j_ti": ev.current_ti(),
        "e_t": ev.energy_t(),
        "e_ti": ev.energy_ti(),
    }


def energy_T(model: ModelSpec, t: Times) -> Result:
    """Parte dependiente de la temperatura de la energía del baño"""
    return _Evaluation(model, t).energy_t()


def energy_TI(model: ModelSpec, t: Times) -> Result:
    """Parte independiente de la temperatura de la energía del baño"""
    return _Evaluation(model, t).energy_ti()


def current_T(model: ModelSpec, t: Times) -> Result:
    """Corriente dependiente de la temperatura J_T"""
    return _Evaluation(model, t).current_t()


def current_TI(model: ModelSpec, t: Times) -> Result:
    """Corriente cuántica J_TI (variante según model.jti_variant)"""
    return _Evaluation(model, t).current_ti()


# Formas cerradas

def _require_bath(model: ModelSpec, expected: type) -> None:
    if not isinstance(model.bath, expected):
        raise InvalidInput(ERROR_BATH_MISMATCH.format(expected=expected.__name__, actual=model.bath.kind))


def _require_positive_times(t: Times) -> np.ndarray:
    grid = np.asarray(t, dtype=float)
    if np.any(grid <= 0):
        raise InvalidInput("Long-time formulas need t > 0")
    return grid


def _closed_inputs(model: ModelSpec, t: Times, factors: Optional[ChainFactors]):
    grid = np.asarray(t, dtype=float)
    if factors is None:
        factors = chain_factors(model.chain, model.initial, grid)
    scale = 2.0 / model.support
    return grid, factors, scale, model.thermal.temperature, model.thermal.gamma_sq


def _as_result(value: np.ndarray) -> Union[float, np.ndarray]:
    value = np.asarray(value, dtype=float)
    return float(value) if value.ndim == 0 else value


def closed_jt_lorentz_drude(model: ModelSpec, t: Times, factors: Optional[ChainFactors] = None) -> Union[float, np.ndarray]:
    """J_T = πT|Γ|² e^{−ω_d t}[dImF/dt − ω_d ImF] (escalado por 2/a)"""
    _require_bath(model, LorentzDrude)
    grid, f, scale, temperature, gamma_sq = _closed_inputs(model, t, factors)
    wd = model.bath.omega_d
    value = scale * math.pi * temperature * gamma_sq * np.exp(-wd * grid) * (f.d_im_F - wd * f.im_F)
    return _as_result(value)


def closed_jt_ohmic_longtime(model: ModelSpec, t: Times, factors: Optional[ChainFactors] = None) -> Union[float, np.ndarray]:
    """J_T ≈ (2πT|Γ|²/(ω_c t⁴))[t·dImF/dt − 3ImF] para ω_c t ≫ 1"""
    _require_bath(model, Ohmic)
    grid = _require_positive_times(t)
    grid, f, scale, temperature, gamma_sq = _closed_inputs(model, grid, factors)
    wc = model.bath.omega_c
    value = scale * 2.0 * math.pi * temperature * gamma_sq / (wc * grid ** 4) * (grid * f.d_im_F - 3.0 * f.im_F)
    return _as_result(value)


def closed_jti_ohmic_longtime(model: ModelSpec, t: Times, factors: Optional[ChainFactors] = None) -> Union[float, np.ndarray]:
    """J_TI ≈ (π|Γ|²/2)[3|f₁₁|²/t⁴ + 6/(ω_c t⁴)·d|f₁₁|²/dt + ω_c³·d(|f₁₁|² + G)/dt]"""
    _require_bath(model, Ohmic)
    grid = _require_positive_times(t)
    grid, f, scale, _, gamma_sq = _closed_inputs(model, grid, factors)
    wc = model.bath.omega_c
    bracket = (
        3.0 * f.p11 / grid ** 4
        + 6.0 / (wc * grid ** 4) * f.dp11
        + wc ** 3 * (f.dp11 + f.dG)
    )
    return _as_result(scale * 0.5 * math.pi * gamma_sq * bracket)


def closed_jt_whitenoise(model: ModelSpec, t: Times, factors: Optional[ChainFactors] = None) -> Union[float, np.ndarray]:
    """J_T ≈ 2T|Γ|²{(Ω/t) sin Ωt·ImF + ((1 − cos Ωt)/t)·dImF/dt}"""
    _require_bath(model, WhiteNoise)
    grid = _require_positive_times(t)
    grid, f, scale, temperature, gamma_sq = _closed_inputs(model, grid, factors)
    omega = model.bath.omega_max
    bracket = omega / grid * np.sin(omega * grid) * f.im_F + (1.0 - np.cos(omega * grid)) / grid * f.d_im_F
    return _as_result(scale * 2.0 * temperature * gamma_sq * bracket)


def closed_jti_whitenoise(model: ModelSpec, t: Times, factors: Optional[ChainFactors] = None) -> Union[float, np.ndarray]:
    """J_TI ≈ |Γ|²{(Ω² sin Ωt/t)|f₁₁|² − (Ω sin Ωt/t)·d|f₁₁|²/dt + (Ω²/4)·d(|f₁₁|² + G)/dt}"""
    _require_bath(model, WhiteNoise)
    grid = _require_positive_times(t)
    grid, f, scale, _, gamma_sq = _closed_inputs(model, grid, factors)
    omega = model.bath.omega_max
    sin_t = np.sin(omega * grid) / grid
    bracket = omega ** 2 * sin_t * f.p11 - omega * sin_t * f.dp11 + 0.25 * omega ** 2 * (f.dp11 + f.dG)
    return _as_result(scale * gamma_sq * bracket)


# Cadena PST

def _require_pst_size(n_sites: int) -> None:
    if n_sites < MIN_CHAIN_SITES:
        raise InvalidInput(f"PST chain needs at least {MIN_CHAIN_SITES} sites")


def pst_ld_peak(n_sites: int, n: int, tau: float, temperature: float, gamma_sq: float, omega_d: float) -> float:
    """Pico de J_T en t = 2nπ/τ: √(N−1)·τ·π·T·|Γ|²·e^{−2ω_d nπ/τ}"""
    _require_pst_size(n_sites)
    if n < 1:
        raise InvalidInput("Peak index n must be at least 1")
    return math.sqrt(n_sites - 1) * tau * math.pi * temperature * gamma_sq * math.exp(-2.0 * omega_d * n * math.pi / tau)


def pst_ld_current(
    n_sites: int, tau: float, temperature: float, gamma_sq: float, omega_d: float, t: Times
) -> Union[float, np.ndarray]:
    """J_T completo de una cadena PST (caso iii) bajo un baño Lorentz-Drude en alta temperatura"""
    _require_pst_size(n_sites)
    f = pst_closed_factors(n_sites, tau, t)
    grid = np.asarray(t, dtype=float)
    value = math.pi * temperature * gamma_sq * np.exp(-omega_d * grid) * (f.d_im_F - omega_d * f.im_F)
    return _as_result(value)


def pst_ohmic_peak(n_sites: int, n: int, tau: float, temperature: float, gamma_sq: float, omega_c: float) -> float:
    """Pico de J_T a tiempos largos bajo baño óhmico: 2πT|Γ|²√(N−1)τ/(ω_c t³), t = 2nπ/τ"""
    _require_pst_size(n_sites)
    if n < 1:
        raise InvalidInput("Peak index n must be at least 1")
    t = 2.0 * n * math.pi / tau
    return 2.0 * math.pi * temperature * gamma_sq * math.sqrt(n_sites - 1) * tau / (omega_c * t ** 3)


def pst_ohmic_jti_oscillation(
    n_sites: int, tau: float, t: Times, variant: JtiVariant = JtiVariant.DERIVATIVE_CONSISTENT
) -> Union[float, np.ndarray]:
    """
    Oscilación de la corriente cuántica PST bajo baño óhmico, con prefactor unidad.

    AS_PRINTED evalúa el corchete publicado; DERIVATIVE_CONSISTENT evalúa
    d(|f₁₁|² + |f₁₂|²)/dt, cuyo promedio sobre un periodo es exactamente cero.
    """
    if n_sites < 4:
        raise InvalidInput(ERROR_OSCILLATION_SIZE)
    if variant == JtiVariant.DERIVATIVE_CONSISTENT:
        f = pst_closed_factors(n_sites, tau, t)
        return _as_result(f.dp11 + f.dG)

    x = tau * np.asarray(t, dtype=float)
    c, s = np.cos(x), np.sin(x)
    n = n_sites
    value = (
        0.25 * tau * (n - 1) * (np.cos(2 * x) * c ** (2 * n - 6) - (2 * n - 6) * s * np.sin(2 * x) * c ** (2 * n - 8))
        - 2.0 * tau * (n - 1) * s * c ** (2 * (n - 1) - 1)
    )
    return _as_result(value)


def _pole_guard(argument: np.ndarray) -> None:
    offset = np.remainder(argument - 0.5 * math.pi, math.pi)
    distance = np.minimum(offset, math.pi - offset)
    if np.any(distance < POLE_GUARD_RAD):
        raise PoleProximity(ERROR_POLE_PROXIMITY.format(guard=POLE_GUARD_RAD))


def jt_jti_ratio_asymptotic(
    model: ModelSpec, t: Times, variant: RatioVariant = RatioVariant.DERIVED
) -> Union[float, np.ndarray]:
    """
    Cociente asintótico J_T/J_TI para cadena uniforme y baño óhmico.

    AS_PRINTED: T·tan(τt − π/4)/(2τω_c⁴t³)
    DERIVED: −8T·tan(2τt)/(3ω_c⁴t³), el orden dominante de las asintóticas de Bessel

    Raises:
        InvalidInput: cadena no uniforme o baño no óhmico
        PoleProximity: a menos de 0.05 rad de un polo de la tangente
    """
    if model.chain.family != ChainFamily.UNIFORM:
        raise InvalidInput(ERROR_CHAIN_MISMATCH.format(expected="uniform", actual=model.chain.family.value))
    _require_bath(model, Ohmic)
    grid = _require_positive_times(t)
    tau = model.chain.tau
    wc = model.bath.omega_c
    temperature = model.thermal.temperature

    if variant == RatioVariant.AS_PRINTED:
        argument = tau * grid - 0.25 * math.pi
        _pole_guard(argument)
        value = temperature * np.tan(argument) / (2.0 * tau * wc ** 4 * grid ** 3)
    else:
        argument = 2.0 * tau * grid
        _pole_guard(argument)
        value = -8.0 * temperature * np.tan(argument) / (3.0 * wc ** 4 * grid ** 3)
    return _as_result(value)
