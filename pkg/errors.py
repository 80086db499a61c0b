# errors.py
from typing import Optional

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_VALIDATION = 2
EXIT_LIMIT = 3


class OverlapError(Exception):
    """Base error of the library; the CLI turns it into an error payload and exit code."""

    exit_code = EXIT_FAILURE

    def __init__(self, message: str, *, index: Optional[int] = None, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.index = index
        self.line = line

    def to_payload(self) -> dict:
        payload = {"status": "error", "error": type(self).__name__, "message": self.message}
        if self.line is not None:
            payload["line"] = self.line
        return payload

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


class PolygonValidationError(OverlapError):
    exit_code = EXIT_VALIDATION


class NotClosedOrthogonal(PolygonValidationError):
    pass


class SelfIntersecting(PolygonValidationError):
    pass


class DegenerateArea(PolygonValidationError):
    pass


class TooFewVertices(PolygonValidationError):
    pass


class CoordinateOutOfRange(PolygonValidationError):
    pass


class NonSimpleInput(PolygonValidationError):
    pass


class ParseError(PolygonValidationError):
    pass


class LimitError(OverlapError):
    exit_code = EXIT_LIMIT


class InstanceTooLarge(LimitError):
    pass


class BudgetExceeded(LimitError):
    pass


class QueryOffGrid(OverlapError):
    pass


class EmptyInput(OverlapError):
    pass


class GenerationFailed(OverlapError):
    pass
