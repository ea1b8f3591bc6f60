from enum import Enum
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from bathflux.schemas.bath import BathSpectrum, Divergent, ThermalParams
from bathflux.schemas.chain import ChainConfig, InitialCase


class EvaluationMode(str, Enum):
    """Evaluación completa o reducción de alta temperatura"""
    FULL = "full"
    HIGH_T = "high_t"


class JtiVariant(str, Enum):
    """Término medio de la corriente independiente de la temperatura"""
    AS_PRINTED = "printed"        # ω(1 − cos ωt) frente a d|f₁₁|²/dt
    DERIVATIVE_CONSISTENT = "consistent"  # derivada exacta de la energía


class RatioVariant(str, Enum):
    """Forma asintótica del cociente J_T/J_TI"""
    AS_PRINTED = "printed"
    DERIVED = "derived"


class ModelSpec(BaseModel):
    """Modelo completo: cadena, estado inicial, baño, parámetros térmicos y modo"""
    chain: ChainConfig
    initial: InitialCase = Field(default=InitialCase.TWO_SITE, description="Caso de estado inicial")
    bath: BathSpectrum
    thermal: ThermalParams
    mode: EvaluationMode = Field(default=EvaluationMode.FULL)
    jti_variant: JtiVariant = Field(default=JtiVariant.DERIVATIVE_CONSISTENT)

    @property
    def support(self) -> int:
        return self.initial.support(self.chain.n_sites)

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={
            "example": {
                "chain": {"n_sites": 6, "family": "pst", "tau": 1.0},
                "initial": "two_site",
                "bath": {"kind": "ohmic", "omega_c": 1.0},
                "thermal": {"temperature": 1.0, "gamma_sq": 0.01},
                "mode": "high_t",
                "jti_variant": "consistent"
            }
        }
    )


Quantity = Union[float, Divergent]


class CurrentSample(BaseModel):
    """Corrientes y energías del baño en un instante"""
    t: float
    j_t: Quantity
    j_ti: Quantity
    e_t: Quantity
    e_ti: Quantity

    @property
    def flags(self) -> List[str]:
        """Nombres de las magnitudes divergentes"""
        return [
            name for name in ("j_t", "j_ti", "e_t", "e_ti")
            if isinstance(getattr(self, name), Divergent)
        ]

    model_config = ConfigDict(frozen=True)


class ScanResult(BaseModel):
    """Barrido temporal de un modelo"""
    model: ModelSpec
    samples: List[CurrentSample]
    metadata: Dict[str, Any] = Field(default_factory=dict)

    def column(self, name: str) -> List[Quantity]:
        return [getattr(sample, name) for sample in self.samples]

    model_config = ConfigDict(protected_namespaces=())


class ConsistencyReport(BaseModel):
    """Comparación entre la corriente y la derivada numérica de la energía"""
    variant: JtiVariant
    step: float = Field(..., gt=0)
    max_residual: Optional[float] = None
    max_current: Optional[float] = None
    relative_residual: Optional[float] = None
    tolerance: float
    passed: bool
    divergent_components: List[str] = Field(default_factory=list)
