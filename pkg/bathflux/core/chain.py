"""
Dinámica de una excitación en la cadena fermiónica abierta.

Convención de fase: f_{1,l}(t) = [e^{−iHt}]_{1,l}, con H tridiagonal de
diagonal nula y elementos −τ_i fuera de la diagonal.
"""

import math
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

import numpy as np
from pydantic import ValidationError

from bathflux.constants import ERROR_CHAIN_SIZE, ERROR_SITE_INDEX, MIN_CHAIN_SITES
from bathflux.core.numerics import bessel_j, tridiag_eigh
from bathflux.exceptions import InvalidInput
from bathflux.logging_config import get_logger
from bathflux.schemas.chain import (
    AmplitudeRow, ChainConfig, ChainFactors, ChainFamily, InitialCase, PstNormalization
)
from bathflux.schemas.numerics import EigenSystem

logger = get_logger(__name__)

Times = Union[float, np.ndarray]


def make_chain(
    family: ChainFamily,
    n_sites: int,
    tau: float,
    pst_normalization: PstNormalization = PstNormalization.MAX_COUPLING
) -> ChainConfig:
    """
    Construir una cadena PST o uniforme.

    Raises:
        InvalidInput: N < 2, τ ≤ 0 o familia CUSTOM
    """
    if n_sites < MIN_CHAIN_SITES:
        raise InvalidInput(ERROR_CHAIN_SIZE)
    if not tau > 0:
        raise InvalidInput("Coupling scale tau must be positive")
    if family == ChainFamily.CUSTOM:
        raise InvalidInput("Custom chains are built with custom_chain()")
    return ChainConfig(n_sites=n_sites, family=family, tau=tau, pst_normalization=pst_normalization)


def custom_chain(couplings: Sequence[float]) -> ChainConfig:
    """Cadena con acoplamientos arbitrarios positivos"""
    try:
        return ChainConfig(n_sites=len(couplings) + 1, couplings=tuple(float(c) for c in couplings))
    except ValidationError as e:
        raise InvalidInput(str(e)) from e


@lru_cache(maxsize=128)
def _eigensystem(couplings: Tuple[float, ...]) -> EigenSystem:
    logger.debug("Diagonalizing chain", extra={"n_sites": len(couplings) + 1})
    return tridiag_eigh(np.zeros(len(couplings) + 1), -np.asarray(couplings))


def eigensystem(config: ChainConfig) -> EigenSystem:
    """Autosistema del hamiltoniano de la cadena (cacheado por acoplamientos)"""
    return _eigensystem(config.couplings)


def _projected_amplitudes(config: ChainConfig, projection: np.ndarray, times: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Σ_l P_{k,l} f_{1,l}(t) y su derivada para las filas de `projection`.

    Devuelve arreglos de forma (len(times), K).
    """
    eig = eigensystem(config)
    weights = eig.eigenvectors[0, :]
    modes = projection @ eig.eigenvectors              # (K, M)
    phases = np.exp(-1j * np.outer(times, eig.eigenvalues)) * weights   # (T, M)
    f = phases @ modes.T
    df = (phases * (-1j * eig.eigenvalues)) @ modes.T
    return f, df


def amplitudes(config: ChainConfig, t: float) -> AmplitudeRow:
    """Fila f_{1,l}(t), l = 1..N, y sus derivadas espectrales"""
    f, df = _projected_amplitudes(config, np.eye(config.n_sites), np.array([float(t)]))
    return AmplitudeRow(t=float(t), f=f[0], df=df[0])


def amplitude_table(config: ChainConfig, times: Sequence[float]) -> List[AmplitudeRow]:
    """Filas de amplitudes sobre una malla temporal"""
    grid = np.asarray(times, dtype=float)
    f, df = _projected_amplitudes(config, np.eye(config.n_sites), grid)
    return [AmplitudeRow(t=float(t), f=f[i], df=df[i]) for i, t in enumerate(grid)]


def pst_amplitudes_closed(n_sites: int, tau: float, t: Times) -> Tuple[Times, Times, Times]:
    """
    Formas cerradas (f₁₁, f₁₂, f₁N) de la cadena PST.

    τ es la frecuencia de rotación de la cadena (ChainConfig.pst_frequency).
    """
    if n_sites < MIN_CHAIN_SITES:
        raise InvalidInput(ERROR_CHAIN_SIZE)
    c = np.cos(tau * np.asarray(t, dtype=float))
    s = np.sin(tau * np.asarray(t, dtype=float))
    f11 = c ** (n_sites - 1) + 0j
    f12 = 1j * math.sqrt(n_sites - 1) * s * c ** (n_sites - 2)
    phase = (-1) ** n_sites * np.exp(1j * math.pi * (n_sites - 1) / 2)
    f1n = phase * s ** (n_sites - 1)
    return f11, f12, f1n


def uniform_amplitudes_closed(n_sites: int, tau: float, t: Times, j: int, l: int) -> Times:
    """Suma de modos seno de la cadena uniforme (acoplamientos τ/2)"""
    if n_sites < MIN_CHAIN_SITES:
        raise InvalidInput(ERROR_CHAIN_SIZE)
    if not (1 <= j <= n_sites and 1 <= l <= n_sites):
        raise InvalidInput(ERROR_SITE_INDEX.format(n_sites=n_sites))
    q = np.pi * np.arange(1, n_sites + 1) / (n_sites + 1)
    energies = -tau * np.cos(q)
    modes = np.sin(q * j) * np.sin(q * l)
    phases = np.exp(-1j * np.multiply.outer(np.asarray(t, dtype=float), energies))
    return (2.0 / (n_sites + 1) * (phases @ modes))[()]


def _jv(n: int, x: np.ndarray) -> np.ndarray:
    return np.asarray(bessel_j(n, x), dtype=float)


def _bessel_amplitude(tau: float, t: np.ndarray, l: int) -> Tuple[np.ndarray, np.ndarray]:
    """i^{l−1}·2l J_l(τt)/(τt) y su derivada temporal, con el límite en t = 0"""
    x = tau * t
    safe = np.where(x == 0, 1.0, x)
    j_l = _jv(l, safe)
    dj_l = 0.5 * (_jv(l - 1, safe) - _jv(l + 1, safe))
    value = np.where(x == 0, 1.0 if l == 1 else 0.0, 2 * l * j_l / safe)
    slope = np.where(x == 0, 0.5 if l == 2 else 0.0, 2 * l * (dj_l / safe - j_l / safe ** 2))
    phase = 1j ** (l - 1)
    return phase * value, phase * tau * slope


def infinite_amplitudes(tau: float, t: Times, l: int) -> Times:
    """
    Amplitud de la cadena semi-infinita uniforme (acoplamientos τ/2).

    f_{1,l} = i^{l−1}·(2l/(τt))·J_l(τt); en t = 0 vale δ_{1,l}.
    """
    if l < 1:
        raise InvalidInput(ERROR_SITE_INDEX.format(n_sites="∞"))
    value, _ = _bessel_amplitude(tau, np.asarray(t, dtype=float), l)
    return value[()] if value.ndim == 0 else value


def _assemble(f11, df11, partner, d_partner) -> dict:
    return {
        "F": np.conj(f11) * partner,
        "dF": np.conj(df11) * partner + np.conj(f11) * d_partner,
        "G": np.abs(partner) ** 2,
        "dG": 2.0 * np.real(np.conj(partner) * d_partner),
        "p11": np.abs(f11) ** 2,
        "dp11": 2.0 * np.real(np.conj(f11) * df11),
    }


def _site1(f11, df11) -> dict:
    zero = np.zeros(np.shape(f11))
    return {
        "F": zero + 0j, "dF": zero + 0j, "G": zero, "dG": zero,
        "p11": np.abs(f11) ** 2,
        "dp11": 2.0 * np.real(np.conj(f11) * df11),
    }


def chain_factors(config: ChainConfig, case: InitialCase, t: Times) -> ChainFactors:
    """
    Factores F, G, |f₁₁|² y derivadas analíticas para un caso inicial.

    (i) SITE1: F = G = 0
    (ii) UNIFORM_ALL: F = f₁₁*·S, G = |S|², S = Σ_{l≥2} f_{1,l}
    (iii) TWO_SITE: F = f₁₁*·f₁₂, G = |f₁₂|²
    """
    grid = np.asarray(t, dtype=float)
    flat = np.atleast_1d(grid)
    n = config.n_sites
    projection = np.zeros((2, n))
    projection[0, 0] = 1.0
    if case == InitialCase.UNIFORM_ALL:
        projection[1, 1:] = 1.0
    else:
        projection[1, 1] = 1.0

    f, df = _projected_amplitudes(config, projection, flat)
    f11, df11 = f[:, 0], df[:, 0]
    if case == InitialCase.SITE1:
        parts = _site1(f11, df11)
    else:
        parts = _assemble(f11, df11, f[:, 1], df[:, 1])
    return ChainFactors(**{k: v.reshape(grid.shape) for k, v in parts.items()})


def pst_closed_factors(n_sites: int, tau: float, t: Times) -> ChainFactors:
    """Factores del caso (iii) a partir de las formas cerradas PST"""
    if n_sites < MIN_CHAIN_SITES:
        raise InvalidInput(ERROR_CHAIN_SIZE)
    x = tau * np.asarray(t, dtype=float)
    c, s = np.cos(x), np.sin(x)
    n = n_sites
    root = math.sqrt(n - 1)

    im_f = root * s * c ** (2 * n - 3)
    d_im_f = root * tau * (c ** (2 * n - 2) - (2 * n - 3) * s ** 2 * c ** (2 * n - 4))
    g = (n - 1) * s ** 2 * c ** (2 * n - 4)
    dg_tail = (2 * n - 4) * s ** 3 * c ** (2 * n - 5) if n > 2 else 0.0 * s
    dg = (n - 1) * tau * (2 * s * c ** (2 * n - 3) - dg_tail)
    p11 = c ** (2 * n - 2)
    dp11 = -(2 * n - 2) * tau * s * c ** (2 * n - 3)

    parts = {"F": 1j * im_f, "dF": 1j * d_im_f, "G": g, "dG": dg, "p11": p11, "dp11": dp11}
    return ChainFactors(**{k: np.asarray(v) for k, v in parts.items()})


def infinite_chain_factors(tau: float, case: InitialCase, t: Times) -> ChainFactors:
    """Factores de la cadena semi-infinita para los casos (i) y (iii)"""
    if case == InitialCase.UNIFORM_ALL:
        raise InvalidInput("Uniform initial state is undefined on a semi-infinite chain")
    grid = np.asarray(t, dtype=float)
    f11, df11 = _bessel_amplitude(tau, grid, 1)
    if case == InitialCase.SITE1:
        parts = _site1(f11, df11)
    else:
        f12, df12 = _bessel_amplitude(tau, grid, 2)
        parts = _assemble(f11, df11, f12, df12)
    return ChainFactors(**{k: np.asarray(v).reshape(grid.shape) for k, v in parts.items()})
