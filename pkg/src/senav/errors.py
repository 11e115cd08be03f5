"""Exception types shared across the package."""


class SizeError(ValueError):
    """An input exceeds a size guard (oracle enumeration, meet-in-the-middle, ...)."""


class RangeError(ValueError):
    """An enumeration index falls outside ``[0, 2**n)``."""


class ParseError(ValueError):
    """Malformed instance or DIMACS text."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class NoSolution(LookupError):
    """A target sum is not achievable by the given set."""


class LimitReached(Exception):
    """Enumeration stopped at the solution limit; ``outcome`` holds the partial result."""

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__(f"solution limit reached after {len(outcome.witnesses)} witnesses")
