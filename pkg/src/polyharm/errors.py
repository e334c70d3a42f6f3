"""Shared exception types, mapped onto stable CLI exit codes."""


class UsageError(ValueError):
    """Bad arguments: mismatched atom sets, wrong dimensions, unknown ids."""


class ClosureError(ValueError):
    """An operation would leave the supported term algebra.

    Raised instead of silently approximating, e.g. for a squared log atom
    or a log term multiplied by powers of the conformal variables.
    """


class DomainError(ValueError):
    """A chart point violates the geometry's domain (e.g. |z| >= 1 on the disc)."""


class ParseError(ValueError):
    """Expression text rejected, with a 0-based position into the source."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# Exit codes used by the command line interface.
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_CLOSURE = 3
EXIT_USAGE = 4
