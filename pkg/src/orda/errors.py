"""Exception types shared across the package."""


class OrdaError(Exception):
    """Base class for all domain errors raised by this package."""


class AlphabetError(OrdaError):
    """A symbol or word does not belong to the expected alphabet."""


class ParseError(OrdaError):
    """Malformed textual input.  Carries a position when one is known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif column is not None:
            where = f" (column {column})"
        super().__init__(message + where)


class ResourceError(OrdaError):
    """A configured size cap was exceeded."""


class CompatibilityError(OrdaError):
    """A structural precondition failed; ``witness`` points at the offender."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
