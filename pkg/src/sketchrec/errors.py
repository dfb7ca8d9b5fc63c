"""Exception types shared across the toolkit."""


class SketchRecError(Exception):
    """Base class for all toolkit errors."""


class InvalidPrimitive(SketchRecError):
    """Curve parameters violate the primitive's geometric invariants."""


class InvalidExtrusion(SketchRecError):
    """Extrusion operation with a non-unit axis or an empty extent interval."""


class OpenLoop(SketchRecError):
    """Loop whose curves are not connected end to end."""


class EmptySketch(SketchRecError):
    """Sketch with no curves where at least one is required."""


class ParseError(SketchRecError):
    """Malformed shape document. ``path`` locates the offending node."""

    def __init__(self, message: str, path: str = "/"):
        super().__init__(f"{path}: {message}")
        self.path = path


class AmbiguousAxis(SketchRecError):
    """Axis estimation with a (near-)degenerate spectrum.

    ``candidates`` holds the eigenvectors of the two smallest eigenvalues.
    """

    def __init__(self, message: str, candidates=None):
        super().__init__(message)
        self.candidates = candidates


class DegenerateShape(SketchRecError):
    """Shape with zero surface area or a zero-extent bounding box."""
