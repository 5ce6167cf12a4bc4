"""Exception hierarchy shared by every qstnet module."""


class QstError(Exception):
    """Base class for all errors raised by qstnet."""


class InvalidSizeError(QstError, ValueError):
    pass


class InvalidParameterError(QstError, ValueError):
    pass


class InvalidPairError(QstError, ValueError):
    pass


class InvalidEdgeError(QstError, ValueError):
    pass


class DuplicateEdgeError(QstError, ValueError):
    pass


class VertexIndexError(QstError, IndexError):
    pass


class NoPathError(QstError):
    pass


class InvalidVarianceError(QstError, ValueError):
    pass


class SizeLimitError(QstError, ValueError):
    pass


class NumericInputError(QstError, ValueError):
    pass


class NumericConsistencyError(QstError, ArithmeticError):
    """A computed probability left [0, 1] by more than round-off."""


class DomainError(QstError, ValueError):
    pass


class UnsupportedSizeError(QstError, ValueError):
    pass


class InvalidWindowError(QstError, ValueError):
    pass


class UnsupportedGraphError(QstError, ValueError):
    pass
