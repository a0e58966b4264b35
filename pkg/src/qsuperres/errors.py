"""Exception types shared across the package.

DomainError subclasses ValueError so plain input validation stays
catchable the usual way; NumericError covers runtime numerical
failures (quadrature that refuses to converge, signals that come out
meaningfully negative, degenerate Fisher problems).
"""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericError(RuntimeError):
    """A numerical invariant was violated at run time."""


class QuadratureError(NumericError):
    """Adaptive quadrature failed to converge; carries diagnostics."""

    def __init__(self, message, *, achieved=None, nodes=None):
        super().__init__(message)
        self.achieved = achieved
        self.nodes = nodes


class DegenerateSignalError(NumericError):
    """Every grid point fell below the signal floor."""


class ShapeError(NumericError):
    """A sampled profile lacks the structure an operation requires."""


class BracketError(NumericError):
    """A threshold criterion is not bracketed by the scanned range."""

    def __init__(self, message, *, scan=None):
        super().__init__(message)
        self.scan = scan


class ConfigError(ValueError):
    """Scenario config rejected; carries the offending location."""

    def __init__(self, message, *, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + loc)
        self.line = line
        self.column = column
