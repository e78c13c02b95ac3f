"""Exception types shared across the package."""


class PowerDomError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(PowerDomError):
    """Invalid graph input (bad vertex id, missing edge, empty graph, ...)."""


class DisconnectedError(GraphError):
    """Operation requires a connected graph."""


class GraphClassError(GraphError):
    """Graph does not belong to the class a specialized solver requires."""


class ParseError(PowerDomError):
    """Syntactically invalid graph file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class BudgetExceededError(PowerDomError):
    """Instance is larger than the configured enumeration budget."""


class NotPowerDominatingError(PowerDomError):
    """A propagation time was requested for a set that is not power dominating."""


class DecompositionError(PowerDomError):
    """The cut-vertex decomposition produced an inconsistent result."""


class SolverInternalError(PowerDomError):
    """A solver produced a witness that failed certification; this is a bug."""


class ModelError(PowerDomError):
    """Malformed optimization model or model operation."""
