from enum import Enum
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Trig(str, Enum):
    """Factor trigonométrico de una integral oscilatoria"""
    SIN = "sin"
    COS = "cos"


class EnvelopeLaw(str, Enum):
    """Ley de decaimiento ajustada sobre una envolvente de picos"""
    POWER = "power"
    EXPONENTIAL = "exponential"


class EigenSystem(BaseModel):
    """Espectro completo de una matriz tridiagonal simétrica real"""
    eigenvalues: np.ndarray = Field(..., description="Autovalores en orden ascendente")
    eigenvectors: np.ndarray = Field(
        ...,
        description="Matriz ortonormal; la columna k corresponde al autovalor k"
    )

    @model_validator(mode='after')
    def validate_shapes(self) -> 'EigenSystem':
        """Validar que autovalores y autovectores sean compatibles"""
        n = self.eigenvalues.shape[0]
        if self.eigenvectors.shape != (n, n):
            raise ValueError('Eigenvector matrix must be square and match the spectrum size')
        return self

    @property
    def size(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> np.ndarray:
        """Reconstruir la matriz V·diag(λ)·Vᵀ"""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.T

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class FitResult(BaseModel):
    """Resultado de un ajuste de envolvente"""
    exponent: float = Field(..., description="Pendiente del ajuste (exponente o tasa logarítmica)")
    log_prefactor: float = Field(..., description="Ordenada en el origen en escala logarítmica")
    residual_rms: float = Field(..., ge=0, description="Residuo cuadrático medio en escala logarítmica")
    window: Tuple[float, float] = Field(..., description="Ventana temporal (t_min, t_max)")
    law: EnvelopeLaw = Field(default=EnvelopeLaw.POWER, description="Ley ajustada")
    n_points: int = Field(default=0, ge=0, description="Picos usados en el ajuste")

    @field_validator('exponent')
    @classmethod
    def validate_exponent(cls, v: float) -> float:
        if not np.isfinite(v):
            raise ValueError('Fitted exponent must be finite')
        return v

    @field_validator('window')
    @classmethod
    def validate_window(cls, v: Tuple[float, float]) -> Tuple[float, float]:
        if not v[0] < v[1]:
            raise ValueError('Fit window must satisfy t_min < t_max')
        return v

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "exponent": -3.0,
                "log_prefactor": 1.1447,
                "residual_rms": 0.0012,
                "window": [50.0, 500.0],
                "law": "power",
                "n_points": 280
            }
        }
    )


class QuadratureEstimate(BaseModel):
    """Valor extrapolado de una integral regularizada con su estimación de error"""
    value: float
    error: float = Field(..., ge=0)
    regulators: Tuple[float, ...] = Field(..., description="Reguladores ε absolutos usados")

    model_config = ConfigDict(frozen=True)
