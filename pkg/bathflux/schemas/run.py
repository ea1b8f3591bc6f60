from typing import List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from bathflux.schemas.model import ModelSpec


class GridSpec(BaseModel):
    """Malla temporal uniforme"""
    t_start: float = Field(..., ge=0, description="Instante inicial")
    t_end: float = Field(..., description="Instante final")
    n_points: int = Field(..., ge=2, description="Número de puntos de la malla")

    @model_validator(mode='after')
    def validate_order(self) -> 'GridSpec':
        if not self.t_start < self.t_end:
            raise ValueError('t_start must be smaller than t_end')
        return self

    def times(self) -> np.ndarray:
        return np.linspace(self.t_start, self.t_end, self.n_points)

    model_config = ConfigDict(extra="forbid")


class SweepSpec(BaseModel):
    """Barrido de un parámetro del modelo"""
    parameter: str = Field(..., description="Ruta del campo, p. ej. model.chain.n_sites")
    values: List[Union[int, float]] = Field(..., min_length=1)

    @field_validator('parameter')
    @classmethod
    def validate_prefix(cls, v: str) -> str:
        if not v.startswith('model.') or len(v.split('.')) < 2:
            raise ValueError('Sweep parameter must be a path below model.')
        return v

    model_config = ConfigDict(extra="forbid")


class OutputSpec(BaseModel):
    """Destino y formato de los resultados"""
    format: Literal["csv", "json"] = "csv"
    path: Optional[str] = Field(default=None, description="Fichero o directorio; stdout si se omite")
    emit_svg: bool = False

    model_config = ConfigDict(extra="forbid")


class RunConfig(BaseModel):
    """Configuración de ejecución de la CLI"""
    model: ModelSpec
    grid: GridSpec
    sweep: Optional[SweepSpec] = None
    output: OutputSpec = Field(default_factory=OutputSpec)

    @model_validator(mode='after')
    def validate_sweep_path(self) -> 'RunConfig':
        """Validar que la ruta del barrido nombre un campo existente del modelo"""
        if self.sweep is None:
            return self
        node = self.model.model_dump()
        for part in self.sweep.parameter.split('.')[1:]:
            if not isinstance(node, dict) or part not in node:
                raise ValueError(f'Sweep parameter {self.sweep.parameter} is not a model field')
            node = node[part]
        return self

    model_config = ConfigDict(extra="forbid", protected_namespaces=())
