"""Exception hierarchy."""


class MatfactError(Exception):
    """Base class for all errors raised by the package."""


class RingMismatchError(MatfactError, ValueError):
    pass


class HomogeneityError(MatfactError, ValueError):
    """An input that must be homogeneous (or degree compatible) is not."""


class FactorizationError(MatfactError, ValueError):
    """A matrix factorization failed verification where a verified one is required."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class NotClosedError(MatfactError, ValueError):
    pass


class NotMCMError(MatfactError, ValueError):
    """Stabilization failed: the module is not maximal Cohen-Macaulay up to the degree bound."""


class NotOnZeroLocusError(MatfactError, ValueError):
    pass


class GroupDataError(MatfactError, ValueError):
    pass


class RingMapError(MatfactError, ValueError):
    pass


class PolySyntaxError(MatfactError, ValueError):
    """Malformed polynomial text. ``position`` is a 1-based column."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at column {position}")
        self.reason = message
        self.position = position


class ProblemError(MatfactError, ValueError):
    """Syntax or semantic error in a problem file, with 1-based line/column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
