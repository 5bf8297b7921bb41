"""
Exceptions raised by twistbraid and the CLI exit codes they map to.
"""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFICATION = 3
EXIT_BUDGET = 4


class TwistbraidError(Exception):
    """Base class for every error raised on purpose by this package."""

    exit_code = 1


class ValidationError(TwistbraidError, ValueError):
    """
    An input was rejected before any computation started: a table that is not a
    group, a non-additive bihomomorphism, an out of range slot, an action that
    does not apply to the base, and so on.
    """

    exit_code = EXIT_VALIDATION


class VerificationFailure(TwistbraidError):
    """
    An exact check that was required to hold came out false.

    Args:
        message: Human readable summary.
        details: JSON-friendly data describing where the check failed.
    """

    exit_code = EXIT_VERIFICATION

    def __init__(self, message: str, details: dict | None = None) -> None:
        super().__init__(message)
        self.details = details or {}


class BudgetExceeded(TwistbraidError):
    """
    A sweep or closure would need more work than allowed.

    Args:
        required: The amount of work the request needs (candidates, group elements).
        budget: The configured limit.
    """

    exit_code = EXIT_BUDGET

    def __init__(self, required: int, budget: int, what: str = "candidates") -> None:
        super().__init__(f"{what}: {required} required, budget is {budget}")
        self.required = required
        self.budget = budget
