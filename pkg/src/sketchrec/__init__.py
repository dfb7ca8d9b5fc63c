"""Sketch-and-extrude CAD reconstruction toolkit."""

from .core import (
    ArcGeometry,
    CurveKind,
    Extrusion,
    ExtrusionOp,
    Loop,
    Primitive,
    Shape,
    Sketch,
    arc_geometry,
    canonicalize_primitive,
    sample_curve_points,
    sketch_plane_transform,
)
from .errors import (
    AmbiguousAxis,
    DegenerateShape,
    EmptySketch,
    InvalidExtrusion,
    InvalidPrimitive,
    OpenLoop,
    ParseError,
    SketchRecError,
)
from .sdf import curve_distance, extrusion_sdf, loop_contains, shape_sdf, sketch_sdf

__version__ = "0.1.0"

__all__ = [
    "ArcGeometry",
    "CurveKind",
    "Extrusion",
    "ExtrusionOp",
    "Loop",
    "Primitive",
    "Shape",
    "Sketch",
    "arc_geometry",
    "canonicalize_primitive",
    "sample_curve_points",
    "sketch_plane_transform",
    "curve_distance",
    "extrusion_sdf",
    "loop_contains",
    "shape_sdf",
    "sketch_sdf",
    "AmbiguousAxis",
    "DegenerateShape",
    "EmptySketch",
    "InvalidExtrusion",
    "InvalidPrimitive",
    "OpenLoop",
    "ParseError",
    "SketchRecError",
    "__version__",
]
