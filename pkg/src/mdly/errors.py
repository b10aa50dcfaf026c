class InputError(ValueError):
    """Malformed or inconsistent input data (exit code 2 at the CLI)."""


class AntisymmetryConflict(InputError):
    pass


class UnsupportedDegree(InputError):
    pass


class NotACocycle(ValueError):
    """Raised when a construction needs a 2-cocycle and gets something else."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
