import json
from pathlib import Path
from typing import Any, Callable, Dict

import pytest

from bathflux.config import get_settings
from bathflux.core.chain import make_chain
from bathflux.schemas.bath import LorentzDrude, Ohmic, ThermalParams, WhiteNoise
from bathflux.schemas.chain import ChainConfig, ChainFamily, InitialCase, PstNormalization
from bathflux.schemas.model import EvaluationMode, ModelSpec


@pytest.fixture(autouse=True)
def clear_settings_cache():
    """Recalcular la configuración en cada test (variables de entorno aisladas)"""
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def pst_chain() -> ChainConfig:
    """Cadena PST de 6 sitios con frecuencia de rotación unidad"""
    return make_chain(ChainFamily.PST, 6, 1.0, PstNormalization.UNIT_FREQUENCY)


@pytest.fixture
def uniform_chain() -> ChainConfig:
    """Cadena uniforme de 8 sitios"""
    return make_chain(ChainFamily.UNIFORM, 8, 1.0)


@pytest.fixture
def ohmic() -> Ohmic:
    return Ohmic(omega_c=1.0)


@pytest.fixture
def lorentz_drude() -> LorentzDrude:
    return LorentzDrude(omega_d=0.5)


@pytest.fixture
def white_noise() -> WhiteNoise:
    return WhiteNoise(omega_max=1.0)


@pytest.fixture
def thermal() -> ThermalParams:
    return ThermalParams(temperature=1.0, gamma_sq=0.01)


@pytest.fixture
def make_model(pst_chain: ChainConfig, thermal: ThermalParams) -> Callable[..., ModelSpec]:
    """Fábrica de modelos: cadena PST de 6 sitios, caso de dos sitios y alta temperatura por defecto"""
    def factory(bath, **overrides: Any) -> ModelSpec:
        fields: Dict[str, Any] = {
            "chain": pst_chain,
            "initial": InitialCase.TWO_SITE,
            "bath": bath,
            "thermal": thermal,
            "mode": EvaluationMode.HIGH_T,
        }
        fields.update(overrides)
        return ModelSpec(**fields)
    return factory


@pytest.fixture
def run_config_data() -> Dict[str, Any]:
    """Configuración de ejecución en bruto (baño óhmico, malla corta)"""
    return {
        "model": {
            "chain": {"n_sites": 6, "family": "pst", "tau": 1.0, "pst_normalization": "unit_frequency"},
            "initial": "two_site",
            "bath": {"kind": "ohmic", "omega_c": 1.0},
            "thermal": {"temperature": 1.0, "gamma_sq": 0.01},
            "mode": "high_t",
        },
        "grid": {"t_start": 0.0, "t_end": 10.0, "n_points": 101},
    }


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[..., Path]:
    """Escribir un diccionario como fichero JSON de configuración"""
    def writer(data: Dict[str, Any], name: str = "config.json") -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(data), encoding="utf-8")
        return path
    return writer
