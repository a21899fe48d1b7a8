"""Exception hierarchy shared by all gwmax modules."""

from __future__ import annotations


class GwmaxError(Exception):
    """Base class for every error raised by gwmax."""


class InvalidDimensionError(GwmaxError, ValueError):
    pass


class InvalidParameterError(GwmaxError, ValueError):
    pass


class CapExceededError(GwmaxError):
    """An enumeration would exceed its configured size cap.

    ``flag`` names the CLI option that raises the cap.
    """

    flag = "--cap-group"

    def __init__(self, message: str, size: int | None = None, cap: int | None = None):
        super().__init__(message)
        self.size = size
        self.cap = cap


class GroupTooLargeError(CapExceededError):
    flag = "--cap-group"


class OracleTooLargeError(CapExceededError):
    flag = "--cap-oracle"


class TooManyMonomialsError(CapExceededError):
    flag = "--cap-monomials"

    def __init__(self, message: str, found: int, cap: int):
        super().__init__(message, size=found, cap=cap)
        self.found = found


class ParseError(GwmaxError, ValueError):
    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NotAdmissibleError(GwmaxError, ValueError):
    pass


class NotQuasihomogeneousError(NotAdmissibleError):
    pass


class WeightsNotUniqueError(NotAdmissibleError):
    pass


class NotDecomposableError(GwmaxError, ValueError):
    pass


class RankDeficientError(GwmaxError, ValueError):
    pass


class SubmatrixTimeoutError(GwmaxError):
    """Cooperative timeout in the submatrix algorithm."""

    def __init__(self, message: str, visited: int):
        super().__init__(message)
        self.visited = visited
