"""Exception hierarchy shared by the library and the CLI exit codes."""


class LatticeError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidInputError(LatticeError, ValueError):
    """Malformed or geometrically invalid input (non-PD form, singular basis, ...)."""

    exit_code = 2

    def __init__(self, message, field=None):
        self.field = field
        if field:
            message = f"{field}: {message}"
        super().__init__(message)


class CapacityError(InvalidInputError):
    """The brute-force oracle refused an instance whose search box is too large."""


class HypothesisViolation(LatticeError):
    """A theorem's hypothesis does not hold for the supplied instance."""

    exit_code = 3


class VerificationFailure(LatticeError):
    """A checked inequality or proof step failed. Never expected on valid inputs."""

    exit_code = 1
