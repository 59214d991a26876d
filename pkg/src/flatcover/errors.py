"""Exception hierarchy.

Exit-code mapping used by the CLI:

* ``InputError`` and subclasses -> exit 2 (bad input)
* ``ResourceBudgetError``       -> exit 3 (configured budget exceeded)
* ``VerificationFailure``       -> exit 1 (expectations unmet)

``InvariantError`` signals a bug in the library itself (a mathematically
guaranteed property failed to hold) and is never caught internally.
"""


class FlatcoverError(Exception):
    """Base class for all library errors."""


class InputError(FlatcoverError, ValueError):
    """Malformed or out-of-contract input (zero normal, bad arity, ...)."""


class PreconditionError(InputError):
    """A documented operation precondition does not hold for these arguments."""


class UnsupportedError(InputError):
    """The operation is defined only for other parameters (e.g. d = 2 only)."""


class DocumentedInconsistencyError(InputError):
    """The requested value sits on a documented corner case with no consistent
    answer (the d = 0 convention); refused rather than guessed."""


class ResourceBudgetError(FlatcoverError):
    """A configured resource budget (hyperplane count, recursion depth) was
    exceeded.  Carries the offending count when known."""

    def __init__(self, message: str, count: int | None = None):
        super().__init__(message)
        self.count = count


class VerificationFailure(FlatcoverError):
    """An explicit expectation (CLI ``verify`` flags) was not met."""


class InvariantError(FlatcoverError):
    """A mathematically guaranteed invariant failed: this is a bug, report it."""


class ParseError(InputError):
    """Scene-file syntax error, with a 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
