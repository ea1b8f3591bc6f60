import logging

import pytest

from bathflux.middleware.timing import timed


class TestTiming:
    """Tests para la medición de tiempos"""

    def test_records_process_time(self):
        """Test que timed añade process_time al registro"""
        with timed("unit", bath="ohmic") as record:
            pass

        assert record["operation"] == "unit"
        assert record["bath"] == "ohmic"
        assert record["process_time"] >= 0

    def test_logs_completion(self, caplog):
        """Test log estructurado al terminar"""
        with caplog.at_level(logging.INFO, logger="bathflux.middleware.timing"):
            with timed("unit", n_points=10):
                pass

        record = next(r for r in caplog.records if r.message == "Operation completed")
        assert record.operation == "unit"
        assert record.n_points == 10
        assert record.process_time.endswith("s")

    def test_logs_and_reraises_failures(self, caplog):
        """Test que una excepción se registra y se propaga"""
        with caplog.at_level(logging.ERROR, logger="bathflux.middleware.timing"):
            with pytest.raises(ValueError):
                with timed("unit"):
                    raise ValueError("bad grid")

        record = next(r for r in caplog.records if r.message == "Operation failed")
        assert record.error == "bad grid"
