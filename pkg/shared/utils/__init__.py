from .errors import InvariantBreach, ParseError, PreconditionError, WeylMassError

__all__ = [
    "InvariantBreach",
    "ParseError",
    "PreconditionError",
    "WeylMassError",
]
