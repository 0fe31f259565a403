"""Exception types shared across the package."""


class GraphMonoidError(Exception):
    """Base class for errors raised by this package."""


class GraphFormatError(GraphMonoidError):
    """A graph description (text or JSON) could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ElementFormatError(GraphMonoidError):
    """A monoid element literal could not be parsed."""


class CapExceeded(GraphMonoidError):
    """A configured resource cap would be exceeded."""
