"""Exception types shared across the library and the CLI exit-code map."""


class ObstructaError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class InvalidComplexError(ObstructaError):
    """Input data fails validation (complex, datum, matrix, map, ...)."""

    exit_code = 2


class SizeGuardError(ObstructaError):
    """A construction would exceed the configured cell budget."""

    exit_code = 3

    def __init__(self, message, requested=None, guard=None):
        super().__init__(message)
        self.requested = requested
        self.guard = guard


class DegenerateGeometryError(ObstructaError):
    """Exact geometry hit a non-generic configuration; caller must perturb inputs."""

    exit_code = 4


class CertificateError(ObstructaError):
    """A certificate failed re-verification."""

    exit_code = 5
