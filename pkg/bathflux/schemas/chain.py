import math
from enum import Enum
from typing import Any, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from bathflux.constants import MIN_CHAIN_SITES


class ChainFamily(str, Enum):
    """Familia de acoplamientos de la cadena"""
    PST = "pst"
    UNIFORM = "uniform"
    CUSTOM = "custom"


class PstNormalization(str, Enum):
    """Normalización de los acoplamientos de transferencia perfecta"""
    MAX_COUPLING = "max_coupling"      # τ_k = 2τ√(k(N−k))/N
    UNIT_FREQUENCY = "unit_frequency"  # τ_k = τ√(k(N−k))


def family_couplings(
    family: ChainFamily,
    n_sites: int,
    tau: float,
    normalization: PstNormalization = PstNormalization.MAX_COUPLING
) -> Tuple[float, ...]:
    """Acoplamientos τ_1..τ_{N−1} de una familia con escala τ"""
    if family == ChainFamily.UNIFORM:
        return tuple(tau / 2.0 for _ in range(n_sites - 1))
    if family == ChainFamily.PST:
        scale = 2.0 * tau / n_sites if normalization == PstNormalization.MAX_COUPLING else tau
        return tuple(scale * math.sqrt(k * (n_sites - k)) for k in range(1, n_sites))
    raise ValueError('Custom chains need explicit couplings')


class ChainConfig(BaseModel):
    """Cadena abierta de N sitios con acoplamientos a primeros vecinos"""
    n_sites: int = Field(..., ge=MIN_CHAIN_SITES, description="Número de sitios N")
    couplings: Tuple[float, ...] = Field(..., description="Acoplamientos positivos τ_1..τ_{N−1}")
    family: ChainFamily = Field(default=ChainFamily.CUSTOM, description="Familia de acoplamientos")
    tau: Optional[float] = Field(default=None, gt=0, description="Escala τ de la familia")
    pst_normalization: PstNormalization = Field(
        default=PstNormalization.MAX_COUPLING,
        description="Normalización de la familia PST"
    )

    @model_validator(mode='before')
    @classmethod
    def fill_family_couplings(cls, data: Any) -> Any:
        """Generar los acoplamientos a partir de la familia cuando no se especifican"""
        if not isinstance(data, dict) or data.get('couplings') is not None:
            return data
        family = ChainFamily(data.get('family', ChainFamily.CUSTOM))
        if family == ChainFamily.CUSTOM:
            return data
        n_sites, tau = data.get('n_sites'), data.get('tau')
        if not isinstance(n_sites, int) or n_sites < MIN_CHAIN_SITES:
            return data
        if tau is None or tau <= 0:
            return data
        normalization = PstNormalization(data.get('pst_normalization', PstNormalization.MAX_COUPLING))
        return {**data, 'couplings': family_couplings(family, n_sites, float(tau), normalization)}

    @field_validator('couplings')
    @classmethod
    def validate_positive(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        """Validar acoplamientos finitos y estrictamente positivos"""
        if not all(math.isfinite(c) and c > 0 for c in v):
            raise ValueError('All couplings must be finite and strictly positive')
        return v

    @model_validator(mode='after')
    def validate_family(self) -> 'ChainConfig':
        """Validar longitud, fórmula de la familia y simetría espejo"""
        if len(self.couplings) != self.n_sites - 1:
            raise ValueError('Chain needs exactly n_sites - 1 couplings')
        if self.family == ChainFamily.CUSTOM:
            return self
        if self.tau is None:
            raise ValueError(f'Family {self.family.value} requires tau')
        expected = family_couplings(self.family, self.n_sites, self.tau, self.pst_normalization)
        if not np.allclose(self.couplings, expected, rtol=1e-12, atol=0.0):
            raise ValueError(f'Couplings do not follow the {self.family.value} formula')
        if not np.allclose(self.couplings, self.couplings[::-1], rtol=1e-12, atol=0.0):
            raise ValueError('Family couplings must be mirror symmetric')
        return self

    @property
    def pst_frequency(self) -> Optional[float]:
        """Frecuencia de rotación efectiva de una cadena PST (2τ/N o τ)"""
        if self.family != ChainFamily.PST:
            return None
        if self.pst_normalization == PstNormalization.MAX_COUPLING:
            return 2.0 * self.tau / self.n_sites
        return self.tau

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "n_sites": 6,
                "family": "pst",
                "tau": 1.0,
                "pst_normalization": "unit_frequency"
            }
        }
    )


class InitialCase(str, Enum):
    """Estado inicial de una excitación repartida sobre los primeros a sitios"""
    SITE1 = "site1"
    UNIFORM_ALL = "uniform_all"
    TWO_SITE = "two_site"

    def support(self, n_sites: int) -> int:
        """Número a de sitios ocupados inicialmente"""
        if self == InitialCase.SITE1:
            return 1
        if self == InitialCase.TWO_SITE:
            return 2
        return n_sites

    def state(self, n_sites: int) -> np.ndarray:
        """Vector inicial normalizado en la base de una excitación"""
        a = self.support(n_sites)
        psi = np.zeros(n_sites, dtype=complex)
        psi[:a] = 1.0 / math.sqrt(a)
        return psi


class AmplitudeRow(BaseModel):
    """Amplitudes f_{1,l}(t) y sus derivadas temporales en un instante"""
    t: float
    f: np.ndarray = Field(..., description="Amplitudes complejas f_{1,l}, l = 1..N")
    df: np.ndarray = Field(..., description="Derivadas df_{1,l}/dt")

    @model_validator(mode='after')
    def validate_lengths(self) -> 'AmplitudeRow':
        if self.f.shape != self.df.shape:
            raise ValueError('Amplitudes and derivatives must have the same length')
        return self

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.f) ** 2))

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class ChainFactors(BaseModel):
    """
    Factores de la cadena F, G, |f₁₁|² y sus derivadas.

    Cada campo es un arreglo numpy con la forma de la malla temporal
    (0-d para un instante aislado).
    """
    F: np.ndarray
    dF: np.ndarray
    G: np.ndarray
    dG: np.ndarray
    p11: np.ndarray
    dp11: np.ndarray

    @model_validator(mode='after')
    def validate_factors(self) -> 'ChainFactors':
        shapes = {np.shape(v) for v in (self.F, self.dF, self.G, self.dG, self.p11, self.dp11)}
        if len(shapes) != 1:
            raise ValueError('All chain factors must share the time-grid shape')
        if np.any(self.G < -1e-12):
            raise ValueError('G must be nonnegative')
        return self

    @property
    def im_F(self) -> np.ndarray:
        return np.imag(self.F)

    @property
    def re_F(self) -> np.ndarray:
        return np.real(self.F)

    @property
    def d_im_F(self) -> np.ndarray:
        return np.imag(self.dF)

    @property
    def d_re_F(self) -> np.ndarray:
        return np.real(self.dF)

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)
