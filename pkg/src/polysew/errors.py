"""Exception types shared by every module of the package."""


class PolytopeError(ValueError):
    """Base class for all errors raised by polysew."""


class BadParameters(PolytopeError):
    pass


class TooManyVertices(PolytopeError):
    pass


class UnknownVertex(PolytopeError):
    pass


class UnusedVertex(PolytopeError):
    pass


class NonSimplicial(PolytopeError):
    pass


class DuplicateFacet(PolytopeError):
    pass


class BadRidge(PolytopeError):
    pass


class Disconnected(PolytopeError):
    pass


class NotAFace(PolytopeError):
    pass


class NotAFacet(PolytopeError):
    pass


class FaceTooLarge(PolytopeError):
    pass


class QuotientNotPolytopal(PolytopeError):
    pass


class SearchTooLarge(PolytopeError):
    pass


class BadDimension(PolytopeError):
    pass


class NotNeighbourly(PolytopeError):
    pass


class InvalidTower(PolytopeError):
    pass


class WrongLength(InvalidTower):
    pass


class DuplicateVertex(InvalidTower):
    pass


class NotUniversalAtLevel(InvalidTower):
    """A prefix of the tower is not a universal face; ``level`` is 1-based."""

    def __init__(self, level, message=None):
        self.level = level
        super().__init__(message or f"tower prefix at level {level} is not universal")


class TooFewVertices(PolytopeError):
    pass


class CatalogOrderViolation(PolytopeError):
    pass


class OracleMismatch(PolytopeError):
    """Two independent computations of the same object disagree."""
