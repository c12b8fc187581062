"""Exception hierarchy shared by every qplab module."""


class QplabError(Exception):
    """Base class for all library errors."""


class GeometryError(QplabError):
    pass


class TangencyError(GeometryError):
    """Two curves touch without crossing."""


class OverlapError(GeometryError):
    """Two curves share a piece of positive length."""


class DegenerateError(GeometryError):
    """A predicate was asked about a configuration it cannot classify."""


class InvalidCurve(GeometryError, ValueError):
    pass


class InvalidDrawing(QplabError):
    def __init__(self, violations):
        self.violations = list(violations)
        kinds = ", ".join(sorted({v.kind for v in self.violations}))
        super().__init__(f"invalid drawing ({kinds})")


class InvalidK(QplabError, ValueError):
    pass


class SizeLimit(QplabError):
    pass


class NoCrossings(QplabError):
    pass


class DuplicateX(QplabError):
    pass


class CoincidentCrossing(QplabError):
    pass


class OrderViolation(QplabError):
    pass


class NoWitness(QplabError):
    pass


class BudgetExhausted(QplabError):
    pass


class RetryBudget(QplabError):
    pass


class MissingConstant(QplabError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class DocumentError(QplabError, ValueError):
    """The drawing document could not be parsed."""
