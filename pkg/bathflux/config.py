from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache
from typing import Literal, Tuple


class Settings(BaseSettings):
    """Configuración de ejecución cargada desde variables de entorno BATHFLUX_*"""

    # Concurrencia
    threads: int = Field(
        default=4,
        ge=1,
        le=64,
        description="Número máximo de entradas de un barrido evaluadas en paralelo"
    )

    # Logging
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = Field(
        default="WARNING",
        description="Nivel de logging de la aplicación"
    )

    # Cuadratura oscilatoria
    regulator_schedule: Tuple[float, ...] = Field(
        default=(1e-3, 1e-4, 1e-5),
        description="Reguladores adimensionales s; ε = s·min(1/ω_c, t), en orden descendente"
    )
    quadrature_far_panels: int = Field(
        default=512,
        ge=32,
        le=65536,
        description="Paneles entre ceros trigonométricos evaluados en el campo lejano"
    )
    quadrature_rtol: float = Field(
        default=1e-6,
        gt=0,
        lt=1,
        description="Discrepancia relativa máxima entre extrapolantes de Richardson"
    )
    near_field_scales: float = Field(
        default=50.0,
        ge=5.0,
        description="Extensión del campo cercano en unidades de la frecuencia característica"
    )

    # Application
    app_name: str = Field(default="bathflux", description="Nombre de la aplicación")
    app_version: str = Field(default="1.0.0", description="Versión de la aplicación")

    @field_validator('regulator_schedule')
    @classmethod
    def validate_regulator_schedule(cls, v: Tuple[float, ...]) -> Tuple[float, ...]:
        """Validar que el calendario de reguladores sea positivo y estrictamente descendente"""
        if len(v) < 2:
            raise ValueError('Regulator schedule needs at least two entries')
        if any(eps <= 0 for eps in v):
            raise ValueError('Regulators must be strictly positive')
        if any(a <= b for a, b in zip(v, v[1:])):
            raise ValueError('Regulator schedule must be strictly descending')
        return v

    model_config = SettingsConfigDict(
        env_prefix="BATHFLUX_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
        validate_default=True,
        json_schema_extra={
            "example": {
                "threads": 4,
                "log_level": "INFO",
                "regulator_schedule": [1e-3, 1e-4, 1e-5],
                "quadrature_far_panels": 512,
                "quadrature_rtol": 1e-6,
                "near_field_scales": 50.0
            }
        }
    )


@lru_cache()
def get_settings() -> Settings:
    """Obtener instancia singleton de configuración"""
    return Settings()


settings = get_settings()
