"""Exception types shared across the package."""


class NetbootError(Exception):
    """Base class for all netboot errors."""


class ParseError(NetbootError, ValueError):
    """Malformed input data (edge list, matrix file, config file)."""


class ParameterError(NetbootError, ValueError):
    """An operation was called with arguments violating its preconditions."""
