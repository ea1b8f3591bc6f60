import io
import json
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import pytest

from bathflux.core.scans import column_array, scan
from bathflux.exceptions import ConfigException, InvalidInput
from bathflux.utils.io import (
    read_column, read_metadata, result_document, result_frame, write_csv, write_result_file
)
from bathflux.utils.plotting import plot_currents


@pytest.fixture
def ohmic_result(make_model, ohmic):
    return scan(make_model(ohmic), np.linspace(0.0, 5.0, 11))


@pytest.fixture
def ld_result(make_model, lorentz_drude):
    return scan(make_model(lorentz_drude), np.linspace(0.5, 5.0, 10))


class TestResultTables:
    """Tests para la escritura de tablas"""

    def test_frame(self, ld_result):
        """Test columnas fijas, celdas DIVERGENT y flags"""
        frame = result_frame(ld_result)

        assert list(frame.columns) == ["t", "j_t", "j_ti", "e_t", "e_ti", "flags"]
        assert (frame["j_ti"] == "DIVERGENT").all()
        assert frame["flags"].iloc[0] == "j_ti;e_ti"
        assert float(frame["t"].iloc[0]) == 0.5

    def test_csv_header(self, ohmic_result):
        """Test cabecera de metadatos reproducible"""
        stream = io.StringIO()
        write_csv(ohmic_result, stream, reproducible=True)
        lines = stream.getvalue().splitlines()

        assert lines[0] == "# bathflux 1.0.0"
        assert json.loads(lines[1][len("# model: "):])["bath"]["kind"] == "ohmic"
        assert json.loads(lines[2][len("# metadata: "):])["mode"] == "high_t"
        assert lines[3] == "t,j_t,j_ti,e_t,e_ti,flags"

    def test_json_document(self, ld_result):
        """Test documento JSON con DIVERGENT y flags como lista"""
        document = result_document(ld_result)

        assert document["samples"][0]["j_ti"] == "DIVERGENT"
        assert document["samples"][0]["flags"] == ["j_ti", "e_ti"]
        assert "generated" in document
        assert "generated" not in result_document(ld_result, reproducible=True)

    def test_round_trip_column(self, ohmic_result, tmp_path):
        """Test que los valores escritos se leen sin pérdida"""
        path = write_result_file(ohmic_result, tmp_path / "nested" / "ohmic.csv", reproducible=True)
        times, values = read_column(path, "j_t")

        np.testing.assert_array_equal(values, column_array(ohmic_result, "j_t"))
        np.testing.assert_array_equal(times, np.linspace(0.0, 5.0, 11))
        assert read_metadata(path)["metadata"].startswith("{")

    def test_divergent_column(self, ld_result, tmp_path):
        """Test lectura de una columna DIVERGENT"""
        path = write_result_file(ld_result, tmp_path / "ld.csv")

        with pytest.raises(InvalidInput):
            read_column(path, "e_ti")

    def test_unknown_column(self, ohmic_result, tmp_path):
        """Test columna inexistente"""
        path = write_result_file(ohmic_result, tmp_path / "ohmic.csv")

        with pytest.raises(InvalidInput):
            read_column(path, "j_total")

    def test_non_numeric_cell(self, tmp_path):
        """Test celda de texto en una columna numérica"""
        path = tmp_path / "bad.csv"
        path.write_text("t,j_t\n0.0,1.0\n0.1,abc\n", encoding="utf-8")

        with pytest.raises(InvalidInput):
            read_column(path, "j_t")

    def test_missing_file(self, tmp_path):
        """Test fichero inexistente"""
        with pytest.raises(ConfigException):
            read_column(tmp_path / "missing.csv", "j_t")


class TestPlotting:
    """Tests para las gráficas SVG"""

    def test_svg_is_reproducible(self, ohmic_result, tmp_path):
        """Test SVG idéntico byte a byte en dos ejecuciones"""
        first = plot_currents(ohmic_result, tmp_path / "a.svg")
        second = plot_currents(ohmic_result, tmp_path / "b.svg")

        assert first.read_bytes() == second.read_bytes()

    def test_concurrent_plots(self, ohmic_result, tmp_path):
        """Test gráficas simultáneas desde varios hilos idénticas a la secuencial"""
        reference = plot_currents(ohmic_result, tmp_path / "serial.svg").read_bytes()
        targets = [tmp_path / f"thread_{i}.svg" for i in range(8)]

        with ThreadPoolExecutor(max_workers=4) as pool:
            paths = list(pool.map(lambda target: plot_currents(ohmic_result, target), targets))

        assert all(path.read_bytes() == reference for path in paths)

    def test_divergent_columns_skipped(self, ld_result, tmp_path):
        """Test que las columnas divergentes no impiden la gráfica"""
        path = plot_currents(ld_result, tmp_path / "ld.svg")

        assert path.exists()
        assert "<svg" in path.read_text(encoding="utf-8")
