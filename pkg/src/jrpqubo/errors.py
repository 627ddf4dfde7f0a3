"""Exception types shared across the package."""


class JrpError(Exception):
    """Base class for all package errors."""


class InvalidInstance(JrpError, ValueError):
    """An instance violates a structural or numeric invariant."""


class ParameterError(JrpError, ValueError):
    """A solver, penalty or segmentation parameter is out of range."""


class CapacityError(JrpError, RuntimeError):
    """A problem is too large for the requested solver."""


class FeasibilityError(JrpError, ValueError):
    """A move list assigns one agent or one vacant job more than once."""


class InstanceFileError(JrpError, ValueError):
    """An instance document could not be parsed.

    ``location`` is either ``"line L, column C"`` for syntax errors or a
    field path such as ``"assigned[2].priority"``.
    """

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location
        self.message = message


class InvariantViolation(JrpError, RuntimeError):
    """An internal consistency check failed during a run."""
