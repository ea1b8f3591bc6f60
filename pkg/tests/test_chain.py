import math

import numpy as np
import pytest
from pydantic import ValidationError

from bathflux.core.chain import (
    amplitude_table, amplitudes, chain_factors, custom_chain, infinite_amplitudes,
    infinite_chain_factors, make_chain, pst_amplitudes_closed, pst_closed_factors,
    uniform_amplitudes_closed
)
from bathflux.core.numerics import finite_difference_derivative
from bathflux.exceptions import InvalidInput
from bathflux.schemas.chain import ChainConfig, ChainFamily, InitialCase, PstNormalization


class TestChainConstruction:
    """Tests para la construcción y validación de cadenas"""

    def test_pst_unit_frequency(self, pst_chain: ChainConfig):
        """Test acoplamientos τ√(k(N−k))"""
        expected = [math.sqrt(k * (6 - k)) for k in range(1, 6)]

        np.testing.assert_allclose(pst_chain.couplings, expected)
        assert pst_chain.pst_frequency == 1.0

    def test_pst_max_coupling(self):
        """Test normalización con acoplamiento máximo τ"""
        chain = make_chain(ChainFamily.PST, 6, 1.0)

        assert max(chain.couplings) == pytest.approx(1.0)
        assert chain.pst_frequency == pytest.approx(1.0 / 3.0)

    def test_uniform(self, uniform_chain: ChainConfig):
        """Test acoplamientos τ/2"""
        assert uniform_chain.couplings == (0.5,) * 7
        assert uniform_chain.pst_frequency is None

    def test_custom(self):
        """Test cadena personalizada"""
        chain = custom_chain([1.0, 2.0, 1.0])

        assert chain.n_sites == 4
        assert chain.family == ChainFamily.CUSTOM

    @pytest.mark.parametrize("n_sites,tau", [(1, 1.0), (6, 0.0), (6, -1.0)])
    def test_invalid_parameters(self, n_sites, tau):
        """Test N < 2 o τ ≤ 0"""
        with pytest.raises(InvalidInput):
            make_chain(ChainFamily.PST, n_sites, tau)

    def test_custom_family_needs_couplings(self):
        """Test que make_chain no construye cadenas personalizadas"""
        with pytest.raises(InvalidInput):
            make_chain(ChainFamily.CUSTOM, 4, 1.0)

    def test_non_positive_couplings(self):
        """Test acoplamientos no positivos"""
        with pytest.raises(InvalidInput):
            custom_chain([1.0, -1.0])

    def test_family_formula_enforced(self):
        """Test acoplamientos que no siguen la fórmula de la familia"""
        with pytest.raises(ValidationError):
            ChainConfig(n_sites=3, family="uniform", tau=1.0, couplings=(0.5, 0.6))

    def test_length_enforced(self):
        """Test número de acoplamientos distinto de N − 1"""
        with pytest.raises(ValidationError):
            ChainConfig(n_sites=4, couplings=(1.0, 1.0))

    def test_initial_states(self):
        """Test estados iniciales normalizados sobre los primeros a sitios"""
        assert InitialCase.SITE1.support(6) == 1
        assert InitialCase.TWO_SITE.support(6) == 2
        assert InitialCase.UNIFORM_ALL.support(6) == 6
        for case in InitialCase:
            assert np.linalg.norm(case.state(6)) == pytest.approx(1.0)


class TestAmplitudes:
    """Tests para las amplitudes f_{1,l}(t)"""

    def test_initial_condition(self, pst_chain: ChainConfig):
        """Test f_{1,l}(0) = δ_{1,l}"""
        row = amplitudes(pst_chain, 0.0)

        np.testing.assert_allclose(row.f, np.eye(6)[0], atol=1e-14)

    def test_perfect_transfer(self, pst_chain: ChainConfig):
        """Test transferencia perfecta al último sitio en t = π/2"""
        row = amplitudes(pst_chain, 0.5 * math.pi)

        assert abs(row.f[-1]) == pytest.approx(1.0, abs=1e-10)
        assert row.norm == pytest.approx(1.0, abs=1e-12)

    def test_pst_closed_forms(self, pst_chain: ChainConfig):
        """Test formas cerradas PST frente a la diagonalización"""
        times = np.linspace(0.0, 7.0, 40)
        f = np.array([row.f for row in amplitude_table(pst_chain, times)])
        f11, f12, f1n = pst_amplitudes_closed(6, 1.0, times)

        np.testing.assert_allclose(f[:, 0], f11, atol=1e-10)
        np.testing.assert_allclose(f[:, 1], f12, atol=1e-10)
        np.testing.assert_allclose(np.abs(f[:, -1]), np.abs(f1n), atol=1e-10)

    def test_uniform_closed_forms(self, uniform_chain: ChainConfig):
        """Test suma de modos seno de la cadena uniforme"""
        times = np.linspace(0.0, 12.0, 30)
        f = np.array([row.f for row in amplitude_table(uniform_chain, times)])

        for l in range(1, 9):
            np.testing.assert_allclose(f[:, l - 1], uniform_amplitudes_closed(8, 1.0, times, 1, l), atol=1e-10)

    def test_uniform_closed_site_range(self):
        """Test índice de sitio fuera de rango"""
        with pytest.raises(InvalidInput):
            uniform_amplitudes_closed(4, 1.0, 1.0, 1, 5)

    def test_infinite_chain(self):
        """Test amplitudes de Bessel frente a una cadena uniforme larga antes de la reflexión"""
        times = np.linspace(0.0, 50.0, 26)
        f = np.array([row.f for row in amplitude_table(make_chain(ChainFamily.UNIFORM, 400, 1.0), times)])

        for l in (1, 2, 3):
            np.testing.assert_allclose(f[:, l - 1], infinite_amplitudes(1.0, times, l), atol=1e-8)

    def test_infinite_chain_origin(self):
        """Test límite en t = 0"""
        assert infinite_amplitudes(1.0, 0.0, 1) == 1.0
        assert infinite_amplitudes(1.0, 0.0, 2) == 0.0

    def test_infinite_chain_site_index(self):
        """Test sitio l < 1"""
        with pytest.raises(InvalidInput):
            infinite_amplitudes(1.0, 1.0, 0)


class TestChainFactors:
    """Tests para los factores F, G y |f₁₁|²"""

    def test_site1_case(self, pst_chain: ChainConfig):
        """Test F = G = 0 en el caso de un solo sitio"""
        times = np.linspace(0.0, 5.0, 21)
        factors = chain_factors(pst_chain, InitialCase.SITE1, times)

        assert np.all(factors.F == 0)
        assert np.all(factors.G == 0)
        np.testing.assert_allclose(factors.p11, np.cos(times) ** 10, atol=1e-10)

    def test_two_site_matches_closed(self, pst_chain: ChainConfig):
        """Test factores del caso de dos sitios frente a las formas cerradas PST"""
        times = np.linspace(0.0, 10.0, 50)
        numeric = chain_factors(pst_chain, InitialCase.TWO_SITE, times)
        closed = pst_closed_factors(6, 1.0, times)

        for name in ("F", "dF", "G", "dG", "p11", "dp11"):
            np.testing.assert_allclose(getattr(numeric, name), getattr(closed, name), atol=1e-10)

    def test_scalar_time(self, pst_chain: ChainConfig):
        """Test instante aislado con el estado uniforme"""
        factors = chain_factors(pst_chain, InitialCase.UNIFORM_ALL, 0.0)

        assert factors.p11.shape == ()
        assert float(factors.p11) == pytest.approx(1.0)
        assert float(factors.G) == pytest.approx(0.0, abs=1e-14)

    def test_derivatives_are_analytic(self, pst_chain: ChainConfig):
        """Test dG y d|f₁₁|² frente a diferencias finitas"""
        times = np.linspace(0.0, 2.0, 2001)
        factors = chain_factors(pst_chain, InitialCase.UNIFORM_ALL, times)

        for value, slope in ((factors.G, factors.dG), (factors.p11, factors.dp11)):
            numeric = finite_difference_derivative(times, value)
            np.testing.assert_allclose(numeric[2:-2], slope[2:-2], atol=1e-6)

    def test_infinite_chain_factors(self):
        """Test factores de Bessel frente a la cadena uniforme larga"""
        times = np.linspace(0.0, 40.0, 21)
        chain = make_chain(ChainFamily.UNIFORM, 400, 1.0)
        numeric = chain_factors(chain, InitialCase.TWO_SITE, times)
        bessel = infinite_chain_factors(1.0, InitialCase.TWO_SITE, times)

        for name in ("F", "dF", "G", "dG", "p11", "dp11"):
            np.testing.assert_allclose(getattr(numeric, name), getattr(bessel, name), atol=1e-8)

    def test_infinite_chain_uniform_state(self):
        """Test que el estado uniforme no está definido en la cadena semi-infinita"""
        with pytest.raises(InvalidInput):
            infinite_chain_factors(1.0, InitialCase.UNIFORM_ALL, 1.0)

    def test_pst_normalizations_agree(self):
        """Test que ambas normalizaciones dan la misma dinámica con la frecuencia efectiva"""
        chain = make_chain(ChainFamily.PST, 6, 3.0, PstNormalization.MAX_COUPLING)
        times = np.linspace(0.0, 5.0, 11)
        numeric = chain_factors(chain, InitialCase.TWO_SITE, times)
        closed = pst_closed_factors(6, chain.pst_frequency, times)

        np.testing.assert_allclose(numeric.G, closed.G, atol=1e-10)
