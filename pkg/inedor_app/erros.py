"""Módulo com a hierarquia de exceções do simulador INEDOR e os códigos de saída da CLI."""

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


class InedorError(Exception):
    """Base class for every error raised by the simulator."""

    exit_code = EXIT_NUMERICAL


class ValidationError(InedorError):
    """Input parameters violate a model invariant or an operation precondition."""

    exit_code = EXIT_VALIDATION


class NonPositiveDensity(ValidationError):
    pass


class PopulationSumMismatch(ValidationError):
    pass


class CoherenceOutOfRange(ValidationError):
    pass


class ZeroGyromagneticRatio(ValidationError):
    pass


class NonPositiveDriveField(ValidationError):
    pass


class NonPositiveGradient(ValidationError):
    pass


class NonPositiveMass(ValidationError):
    pass


class NonPositiveLength(ValidationError):
    pass


class WrongStatistics(ValidationError):
    pass


class ZeroContactShift(ValidationError):
    """Raised when Δλ_eff = 0, i.e. the probe line is not modulated at all."""


class InvalidSweep(ValidationError):
    pass


class InsufficientRange(ValidationError):
    pass


class BinningMismatch(ValidationError):
    pass


class ConfigError(ValidationError):
    """Unknown key, bad unit suffix or malformed value in a run configuration."""


class ModelValidationError(ValidationError):
    """
    Aggregated validation failure.

    Attributes:
        violations (list[ValidationError]): Every invariant that failed, in the
            order the checks were made.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        names = ", ".join(f"{type(v).__name__}: {v}" for v in self.violations)
        super().__init__(f"{len(self.violations)} invariant(s) violated: {names}")


class NumericalError(InedorError):
    """A numerical procedure could not reach the requested accuracy."""

    exit_code = EXIT_NUMERICAL


class QuadratureFailure(NumericalError):
    def __init__(self, message, achieved_error=None):
        self.achieved_error = achieved_error
        if achieved_error is not None:
            message = f"{message} (achieved error estimate {achieved_error:.3e})"
        super().__init__(message)


class FlatSpectrum(NumericalError):
    pass


class RootPolishFailure(NumericalError):
    pass


class ReproFailure(NumericalError):
    def __init__(self, failed_cases):
        self.failed_cases = list(failed_cases)
        super().__init__("Reproduction cases failed: " + ", ".join(self.failed_cases))


class IoError(InedorError):
    """Writing an output artifact failed."""

    exit_code = EXIT_NUMERICAL
