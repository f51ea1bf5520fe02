"""Exception hierarchy shared by all modules."""


class ArtGalleryError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(ArtGalleryError):
    """Input document is not well-formed (bad JSON, missing fields, wrong types)."""


class ValidationError(ArtGalleryError):
    """Input parsed but describes an unusable geometry."""


class DegeneratePolygon(ValidationError):
    """Too few vertices, duplicate consecutive vertices, or zero area."""


class InvalidPolygon(ValidationError):
    """Vertex list describes a self-intersecting (non-simple) polygon."""


class QueryOutsidePolygon(ArtGalleryError):
    """Visibility query point is not strictly inside the polygon."""


class GuardOutsidePolygon(ArtGalleryError):
    """A guard lies outside the polygon; carries the offending index."""

    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"guard {index} is not strictly inside the polygon")


class EmptyRegionList(ArtGalleryError):
    """union_area called with no regions."""


class GenerationFailure(ArtGalleryError):
    """Random polygon generator exhausted its retry budget."""
