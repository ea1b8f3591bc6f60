"""Excepciones personalizadas de la aplicación"""

from bathflux.constants import EXIT_CONFIG_ERROR, EXIT_NUMERICAL_ERROR


class BathfluxException(Exception):
    """Excepción base; cada subclase fija el código de salida de la CLI"""
    exit_code: int = EXIT_NUMERICAL_ERROR

    def __init__(self, detail: str = "Unexpected failure"):
        super().__init__(detail)
        self.detail = detail


class ConfigException(BathfluxException):
    """Excepción para configuraciones ilegibles o inválidas"""
    exit_code = EXIT_CONFIG_ERROR

    def __init__(self, detail: str = "Invalid configuration"):
        super().__init__(detail)


class InvalidInput(BathfluxException):
    """Excepción para argumentos fuera del dominio de una operación"""
    exit_code = EXIT_CONFIG_ERROR

    def __init__(self, detail: str = "Invalid input"):
        super().__init__(detail)


class NumericalError(BathfluxException):
    """Excepción para fallos numéricos en kernels clasificados como finitos"""
    exit_code = EXIT_NUMERICAL_ERROR

    def __init__(self, detail: str = "Numerical failure"):
        super().__init__(detail)


class NonConvergent(NumericalError):
    """Excepción cuando los extrapolantes regularizados no coinciden"""
    def __init__(self, detail: str = "Regulated quadrature did not converge"):
        super().__init__(detail)


class PoleProximity(NumericalError):
    """Excepción para evaluaciones demasiado cerca de un polo de la tangente"""
    def __init__(self, detail: str = "Too close to a tangent pole"):
        super().__init__(detail)
