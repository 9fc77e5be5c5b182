"""Exception hierarchy shared by all coxforge modules."""


class CoxforgeError(Exception):
    """Base class for every error raised by this package."""


class UnsupportedOrder(CoxforgeError, ValueError):
    """A dihedral order outside {2, 3, 4, 5, 6} was requested."""


class ExpressionSyntaxError(CoxforgeError, ValueError):
    """An expression does not follow the radical expression grammar."""


class DiagramSyntaxError(CoxforgeError, ValueError):
    """A diagram file line could not be parsed."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidWeight(DiagramSyntaxError):
    """A dotted edge weight is not strictly greater than 1."""


class DuplicateEdge(DiagramSyntaxError):
    """The same node pair was given two labels."""


class UnknownNode(CoxforgeError, KeyError):
    pass


class DimensionMismatch(CoxforgeError, ValueError):
    pass


class DottedEdgePresent(CoxforgeError, ValueError):
    """Classification only applies to diagrams without dotted edges."""


class UnsupportedDimension(CoxforgeError, ValueError):
    pass


class NotOneOppositePair(CoxforgeError, ValueError):
    pass


class TooManyUnknowns(CoxforgeError, ValueError):
    pass


class CorruptCatalog(CoxforgeError):
    pass
