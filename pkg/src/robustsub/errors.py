"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation (bad element id, k > n, ...)."""


class InfeasibleError(ValueError):
    """The requested cardinality layout cannot be realised."""


class ConfigError(ValueError):
    """Invalid parameter combination or malformed configuration."""


class ParseError(ValueError):
    """Malformed input file. ``line`` is 1-based when known."""

    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


class ResourceError(RuntimeError):
    """A search budget or size limit was exceeded.

    ``incumbent`` carries the best partial answer found before giving up, if any.
    """

    def __init__(self, message, incumbent=None):
        super().__init__(message)
        self.incumbent = incumbent
