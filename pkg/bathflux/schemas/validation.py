from enum import Enum

from pydantic import BaseModel, ConfigDict, Field


class ValidationLevel(str, Enum):
    """Nivel del conjunto de oráculos"""
    QUICK = "quick"
    FULL = "full"


class CheckResult(BaseModel):
    """Resultado de una comprobación del conjunto de oráculos"""
    name: str
    passed: bool
    detail: str = ""
    elapsed: float = Field(default=0.0, ge=0, description="Segundos empleados")

    model_config = ConfigDict(frozen=True)
