class HteqError(Exception):
    """Base class for all errors raised by hteq."""


class ParseError(HteqError):
    def __init__(self, message, line=0, column=0, source=None):
        self.message = message
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")


class BoundError(HteqError):
    """An enumeration would exceed a configured size limit."""

    def __init__(self, what, size, limit):
        self.what = what
        self.size = size
        self.limit = limit
        super().__init__(f"{what}: size {size} exceeds limit {limit}")
