"""Exception hierarchy shared by all segsim modules.

The split between :class:`InputError` and :class:`ComputationError` drives
CLI exit codes (2 and 1 respectively).  Every concrete class carries a
``code`` string used for machine-readable error lines on stderr.
"""


class SegsimError(Exception):
    code = "Error"


class InputError(SegsimError):
    """Bad or inconsistent input data (CLI exit code 2)."""

    code = "InputError"


class ComputationError(SegsimError):
    """A computation could not be carried out on valid-looking input (exit code 1)."""

    code = "ComputationError"


class ParseError(InputError):
    code = "ParseError"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class OrderError(InputError):
    code = "OrderError"

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ZeroTotalError(InputError):
    code = "ZeroTotal"


class EmptySegmentError(InputError):
    code = "EmptySegment"


class MissingYearError(InputError):
    code = "MissingYear"


class LengthMismatchError(InputError):
    code = "LengthMismatch"


class ZeroBaselineError(ComputationError):
    code = "ZeroBaseline"


class DivisionByZeroError(ComputationError):
    code = "DivisionByZero"


class TooLargeError(ComputationError):
    code = "TooLarge"


class DegenerateSampleError(ComputationError):
    code = "DegenerateSample"


class InsufficientSamplesError(ComputationError):
    code = "InsufficientSamples"
