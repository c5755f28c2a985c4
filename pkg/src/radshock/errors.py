"""Exception hierarchy with stable error codes and CLI exit statuses."""

from __future__ import annotations

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_UNSUPPORTED = 4


class RadShockError(Exception):
    """Base class. ``code`` is the machine-readable name, ``exit_code`` the CLI status."""

    code = "RadShockError"
    exit_code = EXIT_NUMERICAL

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), "exit_code": self.exit_code}


class ValidationError(RadShockError):
    code = "ValidationError"
    exit_code = EXIT_VALIDATION


class NumericalError(RadShockError):
    code = "NumericalError"
    exit_code = EXIT_NUMERICAL


# validation -----------------------------------------------------------------

class InadmissibleDelta(ValidationError):
    code = "InadmissibleDelta"


class NonPositiveInput(ValidationError):
    code = "NonPositiveInput"


class NonPositiveU(ValidationError):
    code = "NonPositiveU"


class InadmissibleShock(ValidationError):
    code = "InadmissibleShock"


class HypothesisGViolated(ValidationError):
    code = "HypothesisGViolated"


class DegenerateCoupling(ValidationError):
    code = "DegenerateCoupling"


class InvalidConfig(ValidationError):
    code = "InvalidConfig"


class NoBracket(ValidationError):
    code = "NoBracket"


# numerical ------------------------------------------------------------------

class StepFailure(NumericalError):
    code = "StepFailure"

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


class NonFiniteRhs(NumericalError):
    code = "NonFiniteRhs"


class RegionViolation(NumericalError):
    code = "RegionViolation"


class NoIntersection(NumericalError):
    code = "NoIntersection"


class AmbiguousConnection(NumericalError):
    code = "AmbiguousConnection"


class QuadratureFailure(NumericalError):
    code = "QuadratureFailure"


class DegenerateP0(NumericalError):
    code = "DegenerateP0"


class InsufficientSamples(NumericalError):
    code = "InsufficientSamples"


class UnsupportedRegime(RadShockError):
    code = "UnsupportedRegime"
    exit_code = EXIT_UNSUPPORTED
