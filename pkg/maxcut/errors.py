"""Exception hierarchy and CLI exit codes."""

from typing import Optional

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4
EXIT_GATE = 5


class MaxCutError(Exception):
    """Base class for all solver errors."""


class InputError(MaxCutError, ValueError):
    """Invalid instance, vector or parameter."""


class PreconditionError(InputError):
    """A documented precondition (e.g. Q + Diag(alpha) < 0) does not hold."""


class SizeLimitError(InputError):
    """Instance too large for the exact oracle."""


class UnsupportedFormatError(InputError):
    """TSPLIB weight type or format outside the supported set."""


class TsplibParseError(InputError):
    """Malformed TSPLIB content."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class NumericError(MaxCutError, ArithmeticError):
    """Non-finite values or failed factorizations."""


class DualInfeasibleError(NumericError):
    """sigma lies outside the dual feasible domain S+_alpha."""


class SolverError(NumericError):
    """Internal solver state that the safeguards should have prevented."""


def exit_code_for(exc: BaseException) -> int:
    """Map an exception to the CLI exit-code contract."""
    if isinstance(exc, (TsplibParseError, UnsupportedFormatError, OSError)):
        return EXIT_PARSE
    if isinstance(exc, NumericError):
        return EXIT_NUMERIC
    return EXIT_USAGE
