from enum import Enum
from typing import Annotated, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator


class KernelKind(str, Enum):
    """Integrales trigonométricas ponderadas por la densidad espectral"""
    SIN = "sin"                 # ∫ρ sin ωt
    WCOS = "wcos"               # ∫ρ ω cos ωt
    W2SIN = "w2sin"             # ∫ρ ω² sin ωt
    W_ONEMCOS = "w_onemcos"     # ∫ρ ω (1 − cos ωt)
    COTH_WSIN = "coth_wsin"     # ∫ρ ω coth(βω/2) sin ωt
    COTH_W2COS = "coth_w2cos"   # ∫ρ ω² coth(βω/2) cos ωt
    MOMENT1 = "moment1"         # ∫ρ ω

    @property
    def thermal(self) -> bool:
        return self in (KernelKind.COTH_WSIN, KernelKind.COTH_W2COS)


class ConvergenceClass(str, Enum):
    """Clase de convergencia de una integral espectral"""
    FINITE = "finite"
    CONDITIONAL = "conditional"
    DIVERGENT = "divergent"


class _SpectrumBase(BaseModel):
    """Campos comunes: cortes opcionales ultravioleta e infrarrojo"""
    uv_cutoff: Optional[float] = Field(default=None, gt=0, description="Corte ultravioleta Λ")
    ir_cutoff: Optional[float] = Field(default=None, gt=0, description="Corte infrarrojo λ")

    @model_validator(mode='after')
    def validate_cutoffs(self):
        if self.uv_cutoff is not None and self.ir_cutoff is not None and self.ir_cutoff >= self.uv_cutoff:
            raise ValueError('ir_cutoff must be smaller than uv_cutoff')
        return self

    @property
    def truncated(self) -> bool:
        return self.uv_cutoff is not None or self.ir_cutoff is not None

    @property
    def support(self) -> Tuple[float, Optional[float]]:
        """Intervalo de integración (inferior, superior o None si no acotado)"""
        lower = self.ir_cutoff or 0.0
        return lower, self.uv_cutoff

    model_config = ConfigDict(frozen=True, extra="forbid")


class LorentzDrude(_SpectrumBase):
    """Baño Lorentz-Drude ρ(ω) = ω/(ω_d² + ω²)"""
    kind: Literal["lorentz_drude"] = "lorentz_drude"
    omega_d: float = Field(..., gt=0, description="Frecuencia de Drude ω_d")

    @property
    def characteristic_frequency(self) -> float:
        return self.omega_d


class Ohmic(_SpectrumBase):
    """Baño óhmico ρ(ω) = (π/2) ω e^{−ω/ω_c}"""
    kind: Literal["ohmic"] = "ohmic"
    omega_c: float = Field(..., gt=0, description="Frecuencia de corte ω_c")

    @property
    def characteristic_frequency(self) -> float:
        return self.omega_c


class WhiteNoise(_SpectrumBase):
    """Ruido blanco ρ(ω) = 1 en (0, Ω]"""
    kind: Literal["white_noise"] = "white_noise"
    omega_max: float = Field(..., gt=0, description="Frecuencia máxima Ω")

    @property
    def characteristic_frequency(self) -> float:
        return self.omega_max

    @property
    def support(self) -> Tuple[float, Optional[float]]:
        lower = self.ir_cutoff or 0.0
        upper = self.omega_max if self.uv_cutoff is None else min(self.omega_max, self.uv_cutoff)
        return lower, upper


BathSpectrum = Annotated[Union[LorentzDrude, Ohmic, WhiteNoise], Field(discriminator="kind")]


class ThermalParams(BaseModel):
    """Temperatura del baño (k_B = 1) y magnitud global del acoplamiento"""
    temperature: float = Field(..., gt=0, description="Temperatura T")
    gamma_sq: float = Field(..., ge=0, description="Magnitud |Γ|² del acoplamiento")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature

    model_config = ConfigDict(
        frozen=True,
        extra="forbid",
        json_schema_extra={"example": {"temperature": 1.0, "gamma_sq": 0.01}}
    )


class Divergent(BaseModel):
    """Marca de una integral sin límite regularizado finito"""
    kernel: str = Field(..., description="Kernel o integral que diverge")
    spectrum: str = Field(..., description="Tipo de baño")
    reason: str = Field(default="", description="Origen de la divergencia")

    def __str__(self) -> str:
        return "DIVERGENT"

    model_config = ConfigDict(frozen=True)
