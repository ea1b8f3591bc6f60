import pytest

from bathflux.core import validation
from bathflux.core.validation import FULL_CHECKS, QUICK_CHECKS, run_validation
from bathflux.schemas.validation import ValidationLevel


class TestValidationSuite:
    """Tests para el conjunto de oráculos"""

    @pytest.mark.parametrize("name,check", QUICK_CHECKS, ids=[name for name, _ in QUICK_CHECKS])
    def test_quick_check_passes(self, name, check):
        """Test cada comprobación del nivel quick"""
        passed, detail = check()

        assert passed, f"{name}: {detail}"

    @pytest.mark.slow
    @pytest.mark.parametrize("name,check", FULL_CHECKS, ids=[name for name, _ in FULL_CHECKS])
    def test_full_check_passes(self, name, check):
        """Test cada comprobación adicional del nivel full"""
        passed, detail = check()

        assert passed, f"{name}: {detail}"

    def test_quick_level_runs_every_check(self, monkeypatch):
        """Test que el nivel quick ejecuta al menos doce comprobaciones, en orden"""
        names = [name for name, _ in QUICK_CHECKS]
        monkeypatch.setattr(validation, "QUICK_CHECKS", [(name, lambda: (True, "")) for name in names])

        results = run_validation(ValidationLevel.QUICK)

        assert len(results) >= 12
        assert [r.name for r in results] == names
        assert len(set(names)) == len(names)

    def test_high_t_limit_bound(self, monkeypatch):
        """Test que la brecha final debe quedar bajo la tolerancia, no solo decrecer"""
        assert validation._HIGH_T_TOLERANCE == 1e-4
        monkeypatch.setattr(validation, "_HIGH_T_TOLERANCE", 0.0)

        passed, detail = validation.check_high_t_limit()

        assert not passed
        assert detail.startswith("relative differences")

    def test_exceptions_count_as_failures(self, monkeypatch):
        """Test que una comprobación que lanza queda como fallo con el tipo de excepción"""
        def broken():
            raise ZeroDivisionError("boom")

        monkeypatch.setattr(validation, "QUICK_CHECKS", [("ok", lambda: (True, "fine")), ("broken", broken)])
        results = run_validation(ValidationLevel.QUICK)

        assert [r.name for r in results] == ["ok", "broken"]
        assert results[0].passed and results[0].detail == "fine"
        assert not results[1].passed
        assert results[1].detail == "ZeroDivisionError: boom"
        assert all(r.elapsed >= 0 for r in results)

    def test_full_level_appends_checks(self, monkeypatch):
        """Test que el nivel full añade sus comprobaciones tras las de quick"""
        monkeypatch.setattr(validation, "QUICK_CHECKS", [("a", lambda: (True, ""))])
        monkeypatch.setattr(validation, "FULL_CHECKS", [("b", lambda: (False, "nope"))])

        quick = run_validation(ValidationLevel.QUICK)
        full = run_validation(ValidationLevel.FULL)

        assert [r.name for r in quick] == ["a"]
        assert [(r.name, r.passed) for r in full] == [("a", True), ("b", False)]
