"""
Conjunto de oráculos: formas cerradas frente a caminos numéricos,
unitariedad, consistencia energía-corriente y leyes de escala.

El nivel quick corre en pocos segundos; full añade los barridos largos
de envolventes.
"""

import math
from typing import Callable, List, Tuple

import numpy as np
from scipy import integrate, stats

from bathflux.core.chain import (
    amplitude_table, infinite_amplitudes, make_chain, pst_amplitudes_closed,
    uniform_amplitudes_closed
)
from bathflux.core.currents import (
    closed_jt_lorentz_drude, closed_jti_whitenoise, current_T, current_TI, evaluate,
    jt_jti_ratio_asymptotic, pst_ld_peak, pst_ohmic_jti_oscillation
)
from bathflux.core.numerics import bessel_j, power_law_fit, tridiag_eigh
from bathflux.core.scans import consistency_check, envelope_analysis, scan
from bathflux.core.spectra import kernel
from bathflux.logging_config import get_logger
from bathflux.middleware.timing import timed
from bathflux.schemas.bath import Divergent, KernelKind, LorentzDrude, Ohmic, ThermalParams, WhiteNoise
from bathflux.schemas.chain import ChainFamily, InitialCase, PstNormalization
from bathflux.schemas.model import EvaluationMode, ModelSpec
from bathflux.schemas.numerics import EnvelopeLaw
from bathflux.schemas.validation import CheckResult, ValidationLevel

logger = get_logger(__name__)

Check = Callable[[], Tuple[bool, str]]

_UNIT = PstNormalization.UNIT_FREQUENCY


def _pst_model(n_sites: int, tau: float, bath, mode=EvaluationMode.HIGH_T, initial=InitialCase.TWO_SITE,
               temperature: float = 1.0, gamma_sq: float = 0.01) -> ModelSpec:
    return ModelSpec(
        chain=make_chain(ChainFamily.PST, n_sites, tau, _UNIT),
        initial=initial,
        bath=bath,
        thermal=ThermalParams(temperature=temperature, gamma_sq=gamma_sq),
        mode=mode,
    )


def _uniform_model(n_sites: int, tau: float, bath, mode=EvaluationMode.HIGH_T) -> ModelSpec:
    return ModelSpec(
        chain=make_chain(ChainFamily.UNIFORM, n_sites, tau),
        initial=InitialCase.TWO_SITE,
        bath=bath,
        thermal=ThermalParams(temperature=1.0, gamma_sq=0.01),
        mode=mode,
    )


def check_eigen_reconstruction() -> Tuple[bool, str]:
    rng = np.random.default_rng(20240101)
    worst = 0.0
    for n in (2, 5, 17, 64):
        d = rng.normal(size=n)
        e = rng.normal(size=n - 1)
        eig = tridiag_eigh(d, e)
        h = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
        worst = max(worst, float(np.max(np.abs(eig.reconstruct() - h)) / np.max(np.abs(h))))
        worst = max(worst, float(np.max(np.abs(eig.eigenvectors.T @ eig.eigenvectors - np.eye(n)))))
    return worst <= 1e-12, f"max deviation {worst:.2e}"


def check_bessel_identities() -> Tuple[bool, str]:
    x = np.linspace(0.1, 100.0, 200)
    recurrence = 0.0
    for n in range(1, 21):
        lhs = bessel_j(n - 1, x) + bessel_j(n + 1, x)
        recurrence = max(recurrence, float(np.max(np.abs(lhs - 2 * n / x * bessel_j(n, x)))))
    sum_rule = 0.0
    for value in x:
        terms = [bessel_j(n, value) ** 2 for n in range(1, int(value) + 40)]
        sum_rule = max(sum_rule, abs(bessel_j(0, value) ** 2 + 2 * sum(terms) - 1.0))
    return max(recurrence, sum_rule) <= 1e-10, f"recurrence {recurrence:.2e}, sum rule {sum_rule:.2e}"


def check_pst_amplitudes() -> Tuple[bool, str]:
    tau = 1.0
    times = np.linspace(0.0, 4 * math.pi / tau, 200)
    worst = 0.0
    for n in range(2, 13):
        rows = amplitude_table(make_chain(ChainFamily.PST, n, tau, _UNIT), times)
        f = np.array([row.f for row in rows])
        f11, f12, f1n = pst_amplitudes_closed(n, tau, times)
        worst = max(
            worst,
            float(np.max(np.abs(f[:, 0] - f11))),
            float(np.max(np.abs(f[:, 1] - f12))),
            float(np.max(np.abs(np.abs(f[:, -1]) - np.abs(f1n)))),
        )
    return worst <= 1e-10, f"max abs error {worst:.2e}"


def check_uniform_amplitudes() -> Tuple[bool, str]:
    tau = 1.0
    times = np.linspace(0.0, 4 * math.pi / tau, 200)
    worst = 0.0
    for n in range(2, 13):
        rows = amplitude_table(make_chain(ChainFamily.UNIFORM, n, tau), times)
        f = np.array([row.f for row in rows])
        for l in range(1, n + 1):
            closed = uniform_amplitudes_closed(n, tau, times, 1, l)
            worst = max(worst, float(np.max(np.abs(f[:, l - 1] - closed))))
    return worst <= 1e-10, f"max abs error {worst:.2e}"


def check_unitarity() -> Tuple[bool, str]:
    times = np.linspace(0.0, 100.0, 200)
    worst = 0.0
    for n in range(2, 13):
        for family in (ChainFamily.PST, ChainFamily.UNIFORM):
            for row in amplitude_table(make_chain(family, n, 1.0), times):
                worst = max(worst, abs(row.norm - 1.0))
    return worst <= 1e-12, f"max norm deviation {worst:.2e}"


def check_infinite_chain() -> Tuple[bool, str]:
    times = np.linspace(0.0, 100.0, 101)
    rows = amplitude_table(make_chain(ChainFamily.UNIFORM, 400, 1.0), times)
    f = np.array([row.f for row in rows])
    worst = 0.0
    for l in range(1, 7):
        worst = max(worst, float(np.max(np.abs(f[:, l - 1] - infinite_amplitudes(1.0, times, l)))))
    return worst <= 1e-6, f"max abs error {worst:.2e}"


_KERNEL_RTOL = 1e-6
_KERNEL_ATOL = 1e-12


def _kernel_fidelity(times: np.ndarray) -> Tuple[bool, str]:
    cells = [
        (Ohmic(omega_c=1.0), (KernelKind.SIN, KernelKind.WCOS, KernelKind.W2SIN, KernelKind.W_ONEMCOS)),
        (WhiteNoise(omega_max=1.0), (KernelKind.SIN, KernelKind.WCOS, KernelKind.W2SIN, KernelKind.W_ONEMCOS)),
        (LorentzDrude(omega_d=1.0), (KernelKind.SIN, KernelKind.WCOS)),
    ]
    worst = 0.0
    for spec, kinds in cells:
        for kind in kinds:
            closed = np.asarray(kernel(spec, kind, times))
            numeric = np.asarray(kernel(spec, kind, times, method="quadrature"))
            # Tolerancia mixta rtol·|cerrada| + atol
            excess = np.abs(numeric - closed) / (_KERNEL_RTOL * np.abs(closed) + _KERNEL_ATOL)
            worst = max(worst, float(np.max(excess)))
    return worst <= 1.0, f"max error {worst:.2f} of tolerance (rtol {_KERNEL_RTOL:.0e}, atol {_KERNEL_ATOL:.0e})"


def check_kernel_fidelity_quick() -> Tuple[bool, str]:
    return _kernel_fidelity(np.array([0.5, 2.0, 5.0]))


def check_kernel_fidelity_full() -> Tuple[bool, str]:
    return _kernel_fidelity(np.geomspace(0.1, 50.0, 20))


def check_divergence_reporting() -> Tuple[bool, str]:
    ld = LorentzDrude(omega_d=1.0)
    wn = WhiteNoise(omega_max=1.0)
    flags = [
        isinstance(kernel(ld, KernelKind.MOMENT1, 1.0), Divergent),
        isinstance(kernel(ld, KernelKind.W2SIN, 1.0), Divergent),
        isinstance(kernel(wn, KernelKind.COTH_WSIN, 1.0, beta=1.0), Divergent),
        isinstance(kernel(wn, KernelKind.COTH_W2COS, 1.0, beta=1.0), Divergent),
        isinstance(current_TI(_pst_model(6, 1.0, ld), 1.0), Divergent),
        not isinstance(kernel(LorentzDrude(omega_d=1.0, uv_cutoff=50.0), KernelKind.MOMENT1, 1.0), Divergent),
    ]
    return all(flags), f"{sum(flags)}/{len(flags)} divergence flags as expected"


def check_site1_nullity() -> Tuple[bool, str]:
    times = np.linspace(0.0, 20.0, 101)
    worst = 0.0
    for bath in (LorentzDrude(omega_d=0.5), Ohmic(omega_c=1.0), WhiteNoise(omega_max=1.0)):
        for mode in EvaluationMode:
            model = _pst_model(6, 1.0, bath, mode=mode, initial=InitialCase.SITE1)
            value = current_T(model, times)
            if isinstance(value, Divergent):
                return False, f"J_T divergent for {bath.kind}"
            worst = max(worst, float(np.max(np.abs(value))))
    return worst == 0.0, f"max |J_T| {worst:.2e}"


def check_pst_peak_scaling() -> Tuple[bool, str]:
    tau, temperature, gamma_sq, omega_d = 1.0, 1.0, 0.01, 0.5
    sizes = np.array([5, 10, 20, 40, 80])
    t_peak = 2 * math.pi / tau
    generic, mismatch = [], 0.0
    for n in sizes:
        model = _pst_model(int(n), tau, LorentzDrude(omega_d=omega_d), temperature=temperature, gamma_sq=gamma_sq)
        value = current_T(model, t_peak)
        closed = pst_ld_peak(int(n), 1, tau, temperature, gamma_sq, omega_d)
        mismatch = max(mismatch, abs(value - closed) / closed)
        generic.append(value)
    slope = stats.linregress(np.log(sizes - 1), np.log(generic)).slope
    ok = mismatch <= 1e-8 and abs(slope - 0.5) <= 0.01
    return ok, f"slope {slope:.6f}, max relative mismatch {mismatch:.2e}"


def check_ld_closed_form() -> Tuple[bool, str]:
    model = _pst_model(6, 1.0, LorentzDrude(omega_d=0.3))
    times = np.linspace(0.1, 30.0, 300)
    generic = current_T(model, times)
    closed = closed_jt_lorentz_drude(model, times)
    worst = float(np.max(np.abs(generic - closed)))
    return worst <= 1e-10 * max(1.0, float(np.max(np.abs(closed)))), f"max abs difference {worst:.2e}"


def check_consistency() -> Tuple[bool, str]:
    tau = 1.0
    h = 1e-3 / tau
    grid = np.arange(1.0, 3.0 + 0.5 * h, h)
    details, ok = [], True
    for bath in (Ohmic(omega_c=1.0), WhiteNoise(omega_max=1.0)):
        report = consistency_check(_pst_model(6, tau, bath), grid)
        ok &= report.passed
        details.append(f"{bath.kind} {report.relative_residual:.2e}")
    return ok, ", ".join(details)


def check_oscillation_mean() -> Tuple[bool, str]:
    tau = 1.0
    period = 2 * math.pi / tau
    worst = 0.0
    for n in (4, 6, 10):
        mean, _ = integrate.quad(lambda t: pst_ohmic_jti_oscillation(n, tau, t), 0.0, period, limit=200)
        mean /= period
        peak = float(np.max(np.abs(pst_ohmic_jti_oscillation(n, tau, np.linspace(0.0, period, 2001)))))
        worst = max(worst, abs(mean) / peak)
    return worst <= 1e-8, f"max |mean|/max {worst:.2e}"


def check_planted_power_law() -> Tuple[bool, str]:
    t = np.linspace(10.0, 100.0, 50)
    exact = power_law_fit((t, 7.0 * t ** -3.0), (10.0, 100.0))
    grid = np.arange(10.0, 200.0, 0.01)
    rippled = envelope_analysis(grid, grid ** -3.0 * np.abs(np.cos(grid)), (20.0, 200.0))
    ok = abs(exact.exponent + 3.0) <= 1e-10 and abs(rippled.exponent + 3.0) <= 0.02
    return ok, f"planted {exact.exponent:.12f}, rippled {rippled.exponent:.4f}"


def check_ld_exponential_law() -> Tuple[bool, str]:
    omega_d = 0.1
    model = _pst_model(6, 1.0, LorentzDrude(omega_d=omega_d))
    grid = np.arange(0.0, 210.0, 0.01)
    values = current_T(model, grid)
    fit = envelope_analysis(grid, values, (2.0 / omega_d, 20.0 / omega_d), law=EnvelopeLaw.EXPONENTIAL, levels=2)
    rate = -fit.exponent
    return abs(rate - omega_d) <= 0.02 * omega_d, f"rate {rate:.5f} (ω_d = {omega_d})"


def check_ohmic_laws() -> Tuple[bool, str]:
    bath = Ohmic(omega_c=1.0)
    model = _uniform_model(400, 1.0, bath)
    result = scan(model, np.arange(40.0, 510.0, 0.1))
    times = [s.t for s in result.samples]
    window = (50.0, 500.0)
    jt = envelope_analysis(times, [s.j_t for s in result.samples], window)
    jti = envelope_analysis(times, [s.j_ti for s in result.samples], window)
    grid = np.linspace(50.0, 500.0, 200)
    sin_fit = power_law_fit((grid, kernel(bath, KernelKind.SIN, grid)), window)
    ok = abs(jt.exponent + 6.0) <= 0.3 and abs(jti.exponent + 3.0) <= 0.2 and abs(sin_fit.exponent + 3.0) <= 0.1
    return ok, f"J_T {jt.exponent:.3f}, J_TI {jti.exponent:.3f}, SIN {sin_fit.exponent:.3f}"


def check_whitenoise_law() -> Tuple[bool, str]:
    model = _pst_model(2, 0.5, WhiteNoise(omega_max=1.0))
    grid = np.arange(20.0, 320.0, 0.01)
    columns = evaluate(model, grid)
    window = (30.0, 300.0)
    jt = envelope_analysis(grid, columns["j_t"], window, levels=2)
    jti = envelope_analysis(grid, columns["j_ti"], window, levels=2)
    ok = abs(jt.exponent + 1.0) <= 0.1 and abs(jti.exponent + 1.0) <= 0.1
    return ok, f"J_T {jt.exponent:.3f}, J_TI {jti.exponent:.3f}"


def check_whitenoise_closed_jti() -> Tuple[bool, str]:
    model = _pst_model(6, 0.5, WhiteNoise(omega_max=1.0))
    grid = np.arange(200.0, 300.0, 0.05)
    generic = current_TI(model, grid)
    closed = closed_jti_whitenoise(model, grid)
    worst = float(np.max(np.abs(generic - closed)) / np.max(np.abs(generic)))
    return worst <= 0.05, f"max deviation {worst:.3f} of max |J_TI|"


# Brecha relativa admitida a T = 1000 entre el modo completo y el reducido
_HIGH_T_TOLERANCE = 1e-4


def check_high_t_limit() -> Tuple[bool, str]:
    times = np.linspace(0.5, 5.0, 5)
    differences = []
    for temperature in (10.0, 100.0, 1000.0):
        full = current_T(_pst_model(6, 1.0, Ohmic(omega_c=1.0), mode=EvaluationMode.FULL,
                                    temperature=temperature, gamma_sq=1e-12), times)
        reduced = current_T(_pst_model(6, 1.0, Ohmic(omega_c=1.0), temperature=temperature, gamma_sq=1e-12), times)
        differences.append(float(np.max(np.abs(full - reduced)) / np.max(np.abs(reduced))))
    ok = differences[0] > differences[1] > differences[2] and differences[-1] <= _HIGH_T_TOLERANCE
    return ok, "relative differences " + ", ".join(f"{d:.2e}" for d in differences)


def check_ratio_tracking() -> Tuple[bool, str]:
    model = _uniform_model(400, 1.0, Ohmic(omega_c=1.0))
    k = np.arange(int(np.ceil((200.0 - 0.25 * math.pi) / math.pi)), int((1000.0 - 0.25 * math.pi) / math.pi))
    times = (k * math.pi + 0.25 * math.pi) / 2.0
    columns = evaluate(model, times)
    ratio = columns["j_t"] / columns["j_ti"]
    asymptotic = jt_jti_ratio_asymptotic(model, times)
    worst = float(np.max(np.abs(ratio / asymptotic - 1.0)))
    return worst <= 0.2, f"max relative deviation {worst:.3f}"


QUICK_CHECKS: List[Tuple[str, Check]] = [
    ("eigen_reconstruction", check_eigen_reconstruction),
    ("bessel_identities", check_bessel_identities),
    ("pst_amplitudes", check_pst_amplitudes),
    ("uniform_amplitudes", check_uniform_amplitudes),
    ("unitarity", check_unitarity),
    ("infinite_chain", check_infinite_chain),
    ("kernel_fidelity", check_kernel_fidelity_quick),
    ("divergence_reporting", check_divergence_reporting),
    ("site1_nullity", check_site1_nullity),
    ("pst_peak_scaling", check_pst_peak_scaling),
    ("ld_closed_form", check_ld_closed_form),
    ("energy_current_consistency", check_consistency),
    ("oscillation_mean", check_oscillation_mean),
    ("planted_power_law", check_planted_power_law),
    ("ld_exponential_law", check_ld_exponential_law),
]

FULL_CHECKS: List[Tuple[str, Check]] = [
    ("kernel_fidelity_full", check_kernel_fidelity_full),
    ("ohmic_laws", check_ohmic_laws),
    ("whitenoise_law", check_whitenoise_law),
    ("whitenoise_closed_jti", check_whitenoise_closed_jti),
    ("high_t_limit", check_high_t_limit),
    ("ratio_tracking", check_ratio_tracking),
]


def run_validation(level: ValidationLevel = ValidationLevel.QUICK) -> List[CheckResult]:
    """Ejecutar el conjunto de oráculos; una excepción cuenta como fallo"""
    checks = list(QUICK_CHECKS)
    if level == ValidationLevel.FULL:
        checks += FULL_CHECKS

    results = []
    for name, check in checks:
        with timed("validate.check", check=name) as record:
            try:
                passed, detail = check()
            except Exception as e:
                logger.error("Validation check raised", extra={"check": name, "error": str(e)})
                passed, detail = False, f"{type(e).__name__}: {e}"
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail, elapsed=record["process_time"]))
    return results
