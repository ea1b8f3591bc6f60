import pytest
from pydantic import ValidationError

from bathflux.config import Settings, get_settings


class TestSettings:
    """Tests para la configuración por variables de entorno"""

    def test_defaults(self):
        """Test valores por defecto"""
        settings = get_settings()

        assert settings.threads == 4
        assert settings.log_level == "WARNING"
        assert settings.regulator_schedule == (1e-3, 1e-4, 1e-5)
        assert settings.app_name == "bathflux"

    def test_environment(self, monkeypatch):
        """Test lectura de BATHFLUX_*"""
        monkeypatch.setenv("BATHFLUX_THREADS", "8")
        monkeypatch.setenv("BATHFLUX_REGULATOR_SCHEDULE", "[0.01, 0.001]")
        settings = get_settings()

        assert settings.threads == 8
        assert settings.regulator_schedule == (0.01, 0.001)

    def test_singleton(self):
        """Test que get_settings devuelve la misma instancia"""
        assert get_settings() is get_settings()

    @pytest.mark.parametrize("schedule", [(1e-3,), (1e-4, 1e-3), (1e-3, 0.0)])
    def test_invalid_schedule(self, schedule):
        """Test calendarios de reguladores inválidos"""
        with pytest.raises(ValidationError):
            Settings(regulator_schedule=schedule)

    def test_threads_range(self):
        """Test número de hilos fuera de rango"""
        with pytest.raises(ValidationError):
            Settings(threads=0)
