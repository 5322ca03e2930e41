"""Exception hierarchy.

Every error raised by the library derives from :class:`HeckeqError`.  The
three direct subclasses map onto the command-line exit codes: bad input (1),
violated internal invariants (2) and failed theorem checks (3).
"""


class HeckeqError(Exception):
    exit_code = 2


class InputError(HeckeqError, ValueError):
    """The caller supplied something malformed or inconsistent."""

    exit_code = 1


class InternalError(HeckeqError, AssertionError):
    """An invariant that the mathematics guarantees did not hold."""

    exit_code = 2


class TheoremViolation(HeckeqError):
    exit_code = 3


class CycleSyntaxError(InputError):
    def __init__(self, message, text="", column=None, line=None):
        self.text = text
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{message} ({', '.join(where)}): {text!r}"
        super().__init__(message)


class MalformedCycleError(CycleSyntaxError):
    pass


class PointRangeError(CycleSyntaxError):
    pass


class DimensionError(InputError):
    pass


class ContextError(InputError):
    """Operands live over different groups."""


class ContainmentError(InputError):
    """A putative subgroup is not contained in the ambient group."""


class GroupTooLargeError(InputError):
    pass


class InvalidTableError(InputError):
    pass


class ClassAlignmentError(InvalidTableError):
    pass


class InvalidCharacterError(InputError):
    pass


class PreconditionError(InputError):
    pass


class ConfigurationError(InputError):
    pass
