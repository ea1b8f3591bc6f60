import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy import integrate

from bathflux.core.spectra import (
    coth_half, convergence_class, debye_waller, debye_waller_class, kernel, omega_coth,
    spectral_density
)
from bathflux.exceptions import InvalidInput
from bathflux.schemas.bath import (
    ConvergenceClass, Divergent, KernelKind, LorentzDrude, Ohmic, ThermalParams, WhiteNoise
)


class TestSpectralDensity:
    """Tests para las densidades espectrales"""

    def test_lorentz_drude(self):
        """Test ρ(ω) = ω/(ω_d² + ω²)"""
        assert spectral_density(LorentzDrude(omega_d=1.0), 1.0) == pytest.approx(0.5)

    def test_ohmic(self, ohmic: Ohmic):
        """Test ρ(ω) = (π/2)ω e^{−ω/ω_c}"""
        assert spectral_density(ohmic, 1.0) == pytest.approx(0.5 * math.pi * math.exp(-1.0))

    def test_white_noise_support(self, white_noise: WhiteNoise):
        """Test ρ = 1 solo en (0, Ω]"""
        values = spectral_density(white_noise, np.array([0.0, 0.5, 1.0, 2.0]))

        assert values.tolist() == [0.0, 1.0, 1.0, 0.0]

    def test_cutoffs(self):
        """Test densidad nula fuera de [λ, Λ]"""
        spec = LorentzDrude(omega_d=1.0, uv_cutoff=2.0, ir_cutoff=0.5)
        values = spectral_density(spec, np.array([0.25, 1.0, 3.0]))

        assert values[0] == 0.0
        assert values[1] == pytest.approx(0.5)
        assert values[2] == 0.0

    def test_negative_frequency(self, ohmic: Ohmic):
        """Test ω < 0"""
        with pytest.raises(InvalidInput):
            spectral_density(ohmic, -1.0)

    def test_inverted_cutoffs(self):
        """Test λ ≥ Λ"""
        with pytest.raises(ValidationError):
            Ohmic(omega_c=1.0, uv_cutoff=1.0, ir_cutoff=2.0)


class TestThermalFactors:
    """Tests para ω·coth(βω/2)"""

    def test_laurent_branch(self):
        """Test límite 2/β en ω = 0"""
        assert omega_coth(2.0, 0.0) == pytest.approx(1.0)

    def test_regular_branch(self):
        """Test rama directa"""
        assert omega_coth(1.0, 10.0) == pytest.approx(10.0 / math.tanh(5.0))
        assert coth_half(1.0, 2.0) == pytest.approx(1.0 / math.tanh(1.0))

    def test_branches_join(self):
        """Test continuidad en el umbral de la forma de Laurent"""
        below = omega_coth(1.0, 0.999e-3)
        above = omega_coth(1.0, 1.001e-3)

        assert below == pytest.approx(above, rel=1e-6)


class TestClassification:
    """Tests para la clasificación de convergencia"""

    def test_lorentz_drude(self, lorentz_drude: LorentzDrude):
        """Test kernels condicionales y divergentes de Lorentz-Drude"""
        assert convergence_class(lorentz_drude, KernelKind.SIN) == ConvergenceClass.CONDITIONAL
        assert convergence_class(lorentz_drude, KernelKind.COTH_WSIN) == ConvergenceClass.CONDITIONAL
        assert convergence_class(lorentz_drude, KernelKind.MOMENT1) == ConvergenceClass.DIVERGENT
        assert convergence_class(lorentz_drude, KernelKind.W2SIN) == ConvergenceClass.DIVERGENT

    def test_cutoffs_make_finite(self):
        """Test que los cortes llevan las celdas afectadas a FINITE"""
        ld = LorentzDrude(omega_d=0.5, uv_cutoff=20.0)
        wn = WhiteNoise(omega_max=1.0, ir_cutoff=0.01)

        assert convergence_class(ld, KernelKind.MOMENT1) == ConvergenceClass.FINITE
        assert convergence_class(wn, KernelKind.COTH_WSIN) == ConvergenceClass.FINITE
        assert debye_waller_class(ld) == ConvergenceClass.FINITE
        assert debye_waller_class(wn) == ConvergenceClass.FINITE

    def test_ohmic_all_finite(self, ohmic: Ohmic):
        """Test que el baño óhmico no tiene divergencias"""
        assert all(convergence_class(ohmic, kind) == ConvergenceClass.FINITE for kind in KernelKind)
        assert debye_waller_class(ohmic) == ConvergenceClass.FINITE

    def test_white_noise_thermal(self, white_noise: WhiteNoise):
        """Test kernels térmicos divergentes sin corte infrarrojo"""
        assert convergence_class(white_noise, KernelKind.COTH_W2COS) == ConvergenceClass.DIVERGENT
        assert debye_waller_class(white_noise) == ConvergenceClass.DIVERGENT


class TestKernels:
    """Tests para los kernels espectrales"""

    def test_lorentz_drude_closed(self, lorentz_drude: LorentzDrude):
        """Test SIN = (π/2)e^{−ω_d t} y WCOS = −ω_d·SIN"""
        t = np.array([0.5, 1.0, 4.0])
        sin = kernel(lorentz_drude, KernelKind.SIN, t)
        wcos = kernel(lorentz_drude, KernelKind.WCOS, t)

        np.testing.assert_allclose(sin, 0.5 * math.pi * np.exp(-0.5 * t))
        np.testing.assert_allclose(wcos, -0.5 * sin)

    def test_divergent_kernel(self, lorentz_drude: LorentzDrude):
        """Test que un kernel divergente se devuelve como valor, sin excepción"""
        value = kernel(lorentz_drude, KernelKind.MOMENT1, 1.0)

        assert isinstance(value, Divergent)
        assert value.spectrum == "lorentz_drude"
        assert str(value) == "DIVERGENT"

    def test_cosine_moment_at_origin(self, lorentz_drude: LorentzDrude):
        """Test WCOS de Lorentz-Drude en t = 0: divergente como escalar, NaN en una malla"""
        assert isinstance(kernel(lorentz_drude, KernelKind.WCOS, 0.0), Divergent)

        values = kernel(lorentz_drude, KernelKind.WCOS, np.array([0.0, 1.0]))
        assert np.isnan(values[0])
        assert np.isfinite(values[1])

    def test_sine_kernels_vanish_at_origin(self, ohmic: Ohmic):
        """Test kernels tipo seno nulos en t = 0 y tipo coseno iguales a su momento"""
        assert kernel(ohmic, KernelKind.SIN, 0.0) == 0.0
        assert kernel(ohmic, KernelKind.WCOS, 0.0) == pytest.approx(math.pi)
        assert kernel(ohmic, KernelKind.W_ONEMCOS, 0.0) == pytest.approx(0.0, abs=1e-14)
        assert kernel(ohmic, KernelKind.MOMENT1, 2.0) == pytest.approx(math.pi)

    @pytest.mark.parametrize("kind", [KernelKind.SIN, KernelKind.WCOS, KernelKind.W2SIN])
    def test_ohmic_quadrature_matches_closed(self, ohmic: Ohmic, kind: KernelKind):
        """Test cuadratura regularizada frente a la forma cerrada óhmica"""
        closed = kernel(ohmic, kind, 2.0)
        numeric = kernel(ohmic, kind, 2.0, method="quadrature")

        assert numeric == pytest.approx(closed, rel=1e-6)

    def test_lorentz_drude_cosine_tail(self):
        """Test WCOS de Lorentz-Drude a t largo: la cola ~1e-9 coincide con tolerancia mixta"""
        spec = LorentzDrude(omega_d=1.0)
        t = np.array([20.0, 35.0, 50.0])
        closed = kernel(spec, KernelKind.WCOS, t)
        numeric = kernel(spec, KernelKind.WCOS, t, method="quadrature")

        np.testing.assert_allclose(numeric, closed, rtol=1e-6, atol=1e-12)

    def test_white_noise_closed(self, white_noise: WhiteNoise):
        """Test SIN = (1 − cos Ωt)/t, con la serie de Taylor a Ωt pequeño"""
        assert kernel(white_noise, KernelKind.SIN, 2.0) == pytest.approx((1.0 - math.cos(2.0)) / 2.0)
        assert kernel(white_noise, KernelKind.SIN, 1e-3) == pytest.approx((1.0 - math.cos(1e-3)) / 1e-3, rel=1e-9)
        assert kernel(white_noise, KernelKind.MOMENT1, 1.0) == pytest.approx(0.5)

    def test_high_temperature_reduction(self, ohmic: Ohmic):
        """Test COTH_WSIN ≈ 2T·SIN a temperatura alta"""
        temperature = 100.0
        thermal = kernel(ohmic, KernelKind.COTH_WSIN, 1.0, beta=1.0 / temperature)
        reduced = 2.0 * temperature * kernel(ohmic, KernelKind.SIN, 1.0)

        assert thermal == pytest.approx(reduced, rel=1e-4)

    def test_truncated_thermal_kernel(self):
        """Test kernel térmico de ruido blanco con corte infrarrojo frente a QUADPACK"""
        spec = WhiteNoise(omega_max=1.0, ir_cutoff=0.1)
        value = kernel(spec, KernelKind.COTH_WSIN, 1.0, beta=1.0)
        expected, _ = integrate.quad(lambda w: w / math.tanh(0.5 * w) * math.sin(w), 0.1, 1.0)

        assert value == pytest.approx(expected, rel=1e-8)

    def test_thermal_kernel_needs_beta(self, ohmic: Ohmic):
        """Test kernel térmico sin β"""
        with pytest.raises(InvalidInput):
            kernel(ohmic, KernelKind.COTH_WSIN, 1.0)

    def test_negative_time(self, ohmic: Ohmic):
        """Test t < 0"""
        with pytest.raises(InvalidInput):
            kernel(ohmic, KernelKind.SIN, -1.0)


class TestDebyeWaller:
    """Tests para el factor de Debye-Waller"""

    def test_no_coupling(self, lorentz_drude: LorentzDrude):
        """Test D = 1 con |Γ|² = 0, incluso para baños divergentes"""
        assert debye_waller(lorentz_drude, ThermalParams(temperature=1.0, gamma_sq=0.0)) == 1.0

    def test_divergent(self, lorentz_drude: LorentzDrude, thermal: ThermalParams):
        """Test Lorentz-Drude sin corte"""
        assert isinstance(debye_waller(lorentz_drude, thermal), Divergent)

    def test_ohmic_high_temperature(self, ohmic: Ohmic):
        """Test ∫ρ coth(βω/2) dω = πT + π/(6T) + … para el baño óhmico"""
        temperature, gamma_sq = 100.0, 1e-4
        value = debye_waller(ohmic, ThermalParams(temperature=temperature, gamma_sq=gamma_sq))
        integral = math.pi * temperature + math.pi / (6.0 * temperature)

        assert value == pytest.approx(math.exp(-0.5 * gamma_sq * integral), rel=1e-8)

    def test_cutoff_makes_finite(self, thermal: ThermalParams):
        """Test Lorentz-Drude con corte ultravioleta"""
        value = debye_waller(LorentzDrude(omega_d=0.5, uv_cutoff=10.0), thermal)

        assert 0.0 < value < 1.0
