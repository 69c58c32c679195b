"""Exception types shared across the package."""


class GraphError(Exception):
    """Base class for everything raised by this package."""


class ParseError(GraphError):
    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class LabelError(ParseError):
    """A vertex label uses a reserved character or whitespace."""


class LoopError(ParseError):
    """An edge joins a vertex to itself."""


class LookupFailure(GraphError, KeyError):
    """A label is not a vertex of the graph."""

    def __str__(self):
        return Exception.__str__(self)


class ArgumentError(GraphError, ValueError):
    pass


class InfeasibleError(GraphError):
    """More disjoint paths were requested than the graph admits."""

    def __init__(self, message, achievable):
        super().__init__(message)
        self.achievable = achievable


class ValidityError(GraphError):
    """A tree or certificate handed to an operation is not valid."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = list(report or [])


class BoundError(GraphError):
    """The hypotheses of the product bound being constructed do not hold."""

    def __init__(self, message, hypothesis):
        super().__init__(message)
        self.hypothesis = hypothesis


class ConstructionError(GraphError):
    """A product construction could not finish; carries the partial trace."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class BudgetExhausted(GraphError):
    """The search node cap was reached before the answer was proved."""

    def __init__(self, message, lower=0, upper=None, certificate=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.certificate = certificate
