"""
Error hierarchy shared by the algebra kernels, the CLI and the HTTP layer.

- PreconditionError: bad input (zero element, non-coprime direction, syntax)
- InvariantBreach: a computed result contradicts the theory; signals a bug
"""

from typing import Optional, Tuple


class WeylMassError(Exception):
    """Base error carrying a short machine-readable code."""

    exit_code = 1

    def __init__(
        self,
        message: str,
        code: str = "ERROR",
        position: Optional[Tuple[int, int]] = None
    ):
        self.message = message
        self.code = code
        self.position = position
        super().__init__(message)


class PreconditionError(WeylMassError, ValueError):
    """An operation was called outside its domain."""

    def __init__(self, message: str, code: str = "PRECONDITION", position: Optional[Tuple[int, int]] = None):
        super().__init__(message, code=code, position=position)


class ParseError(PreconditionError):
    """Syntax error in an element source, with the offending character span."""

    def __init__(self, message: str, position: Tuple[int, int]):
        super().__init__(message, code="PARSE_ERROR", position=position)

    def highlight(self, source: str) -> str:
        """Render the source with a caret marker under the error span."""
        start, end = self.position
        marker = " " * start + "^" * max(1, end - start)
        return f"{source}\n{marker}"


class InvariantBreach(WeylMassError, RuntimeError):
    """A theorem-backed invariant failed; exit code 2."""

    exit_code = 2

    def __init__(self, message: str, code: str = "INVARIANT_BREACH"):
        super().__init__(message, code=code)
