"""Domain types for sketch primitives, loops, extrusions, and shapes.

Curves use a fixed 6-slot parameter vector in normalized sketch units with
unused slots padded by -1:

    line:   (x_m, y_m, x_1, y_1, -1, -1)   midpoint + one endpoint
    arc:    (x_m, y_m, x_1, y_1, x_2, y_2) on-curve midpoint, start, end
    circle: (x_c, y_c, r, -1, -1, -1)

All types are immutable after construction; every operation in this module is
a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptySketch, InvalidExtrusion, InvalidPrimitive, OpenLoop

PAD = -1.0
N_PARAMS = 6
MAX_CURVES = 30  # query budget shared with the decoder
COLLINEAR_TOL = 1e-9
CLOSURE_TOL = 1e-6
COORD_BOUND = 1.0


class CurveKind(str, Enum):
    LINE = "line"
    ARC = "arc"
    CIRCLE = "circle"


# number of leading parameter slots that carry data, per kind
USED_SLOTS = {CurveKind.LINE: 4, CurveKind.ARC: 6, CurveKind.CIRCLE: 3}


@dataclass(frozen=True)
class Primitive:
    """One sketch curve: a type tag plus the padded 6-slot parameter vector."""

    kind: CurveKind
    params: tuple[float, ...]

    def __post_init__(self):
        if len(self.params) != N_PARAMS:
            raise InvalidPrimitive(f"expected {N_PARAMS} parameter slots, got {len(self.params)}")
        _check_primitive(self.kind, self.params)

    @property
    def used_params(self) -> tuple[float, ...]:
        return self.params[: USED_SLOTS[self.kind]]

    def is_closed(self) -> bool:
        return self.kind is CurveKind.CIRCLE


def canonicalize_primitive(kind: CurveKind | str, raw_params: Sequence[float]) -> Primitive:
    """Build a Primitive from the used parameter slots, padding the rest with -1.

    ``raw_params`` may supply either exactly the slots required by ``kind`` or
    a full 6-slot vector (whose trailing slots are discarded). Idempotent:
    canonicalizing an already canonical parameter vector returns an equal
    Primitive.
    """
    kind = CurveKind(kind)
    used = USED_SLOTS[kind]
    params = [float(v) for v in raw_params]
    if len(params) not in (used, N_PARAMS):
        raise InvalidPrimitive(
            f"{kind.value} needs {used} parameters (or a padded 6-vector), got {len(params)}"
        )
    slots = params[:used] + [PAD] * (N_PARAMS - used)
    return Primitive(kind, tuple(slots))


def _check_primitive(kind: CurveKind, params: tuple[float, ...]) -> None:
    if any(not math.isfinite(v) for v in params):
        raise InvalidPrimitive(f"non-finite parameter in {params}")
    used = USED_SLOTS[kind]
    if any(v != PAD for v in params[used:]):
        raise InvalidPrimitive(f"padding slots of a {kind.value} must be exactly {PAD}")
    if kind is CurveKind.CIRCLE:
        if params[2] <= 0.0:
            raise InvalidPrimitive(f"circle radius must be positive, got {params[2]}")
    elif kind is CurveKind.ARC:
        m, s, e = params[0:2], params[2:4], params[4:6]
        for a, b in ((m, s), (m, e), (s, e)):
            if math.dist(a, b) <= COLLINEAR_TOL:
                raise InvalidPrimitive("arc points must be pairwise distinct")
        # twice the signed triangle area
        cross = (s[0] - m[0]) * (e[1] - m[1]) - (s[1] - m[1]) * (e[0] - m[0])
        if abs(cross) <= COLLINEAR_TOL:
            raise InvalidPrimitive("arc through collinear points has no circumcircle")


def line_endpoints(p: Primitive) -> tuple[np.ndarray, np.ndarray]:
    """Both endpoints of a line; the implied one is 2*m - d1."""
    if p.kind is not CurveKind.LINE:
        raise InvalidPrimitive(f"expected a line, got {p.kind.value}")
    m = np.array(p.params[0:2])
    d1 = np.array(p.params[2:4])
    return 2.0 * m - d1, d1


@dataclass(frozen=True)
class ArcGeometry:
    center: tuple[float, float]
    radius: float
    start_angle: float
    sweep: float  # signed; traversal from start_angle by sweep passes the midpoint

    @property
    def end_angle(self) -> float:
        return self.start_angle + self.sweep


def arc_geometry(p: Primitive) -> ArcGeometry:
    """Circumcircle through (start, mid, end) plus the traversed angular span.

    The sweep direction is chosen so the stored on-curve midpoint lies on the
    traversed arc.
    """
    if p.kind is not CurveKind.ARC:
        raise InvalidPrimitive(f"expected an arc, got {p.kind.value}")
    m = np.array(p.params[0:2])
    s = np.array(p.params[2:4])
    e = np.array(p.params[4:6])
    center = _circumcenter(s, m, e)
    radius = float(np.hypot(*(s - center)))
    theta_s = math.atan2(s[1] - center[1], s[0] - center[0])
    theta_m = math.atan2(m[1] - center[1], m[0] - center[0])
    theta_e = math.atan2(e[1] - center[1], e[0] - center[0])
    ccw_full = (theta_e - theta_s) % (2.0 * math.pi)
    ccw_mid = (theta_m - theta_s) % (2.0 * math.pi)
    if ccw_mid <= ccw_full:
        sweep = ccw_full
    else:
        sweep = ccw_full - 2.0 * math.pi
    return ArcGeometry((float(center[0]), float(center[1])), radius, theta_s, sweep)


def _circumcenter(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray:
    # perpendicular-bisector linear system
    ab = b - a
    ac = c - a
    det = 2.0 * (ab[0] * ac[1] - ab[1] * ac[0])
    if abs(det) <= COLLINEAR_TOL:
        raise InvalidPrimitive("arc through collinear points has no circumcircle")
    ab2 = float(ab @ ab)
    ac2 = float(ac @ ac)
    ux = (ac[1] * ab2 - ab[1] * ac2) / det
    uy = (ab[0] * ac2 - ac[0] * ab2) / det
    return a + np.array([ux, uy])


def curve_endpoints(p: Primitive) -> tuple[np.ndarray, np.ndarray] | None:
    """(start, end) of an open curve; None for circles."""
    if p.kind is CurveKind.LINE:
        return line_endpoints(p)
    if p.kind is CurveKind.ARC:
        return np.array(p.params[2:4]), np.array(p.params[4:6])
    return None


def reverse_curve(p: Primitive) -> Primitive:
    """Swap traversal direction. Lines re-anchor d1 to the other endpoint."""
    if p.kind is CurveKind.LINE:
        d0, _ = line_endpoints(p)
        return canonicalize_primitive(CurveKind.LINE, (p.params[0], p.params[1], d0[0], d0[1]))
    if p.kind is CurveKind.ARC:
        x_m, y_m, x1, y1, x2, y2 = p.params
        return canonicalize_primitive(CurveKind.ARC, (x_m, y_m, x2, y2, x1, y1))
    return p


def curve_length(p: Primitive) -> float:
    if p.kind is CurveKind.LINE:
        d0, d1 = line_endpoints(p)
        return float(np.hypot(*(d1 - d0)))
    if p.kind is CurveKind.ARC:
        geo = arc_geometry(p)
        return geo.radius * abs(geo.sweep)
    return 2.0 * math.pi * p.params[2]


def sample_curve_points(p: Primitive, n: int) -> np.ndarray:
    """n points on the curve, uniform in arc-length parameter, as an (n, 2) array.

    Open curves include both endpoints; circles start at angle 0 and omit the
    duplicate wrap-around point.
    """
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")
    return sample_curve_at(p, np.linspace(0.0, 1.0, n) if not p.is_closed() else np.arange(n) / n)


def sample_curve_at(p: Primitive, t: np.ndarray) -> np.ndarray:
    """Points at arc-length fractions ``t`` in [0, 1] along the curve."""
    t = np.asarray(t, dtype=float)
    if p.kind is CurveKind.LINE:
        d0, d1 = line_endpoints(p)
        return d0[None, :] + t[:, None] * (d1 - d0)[None, :]
    if p.kind is CurveKind.ARC:
        geo = arc_geometry(p)
        theta = geo.start_angle + t * geo.sweep
        return np.stack(
            [geo.center[0] + geo.radius * np.cos(theta), geo.center[1] + geo.radius * np.sin(theta)],
            axis=1,
        )
    cx, cy, r = p.params[0], p.params[1], p.params[2]
    theta = 2.0 * math.pi * t
    return np.stack([cx + r * np.cos(theta), cy + r * np.sin(theta)], axis=1)


@dataclass(frozen=True)
class Loop:
    """Ordered curves forming one closed profile boundary."""

    curves: tuple[Primitive, ...]

    def __post_init__(self):
        if not self.curves:
            raise OpenLoop("loop has no curves")

    def is_circle(self) -> bool:
        return len(self.curves) == 1 and self.curves[0].is_closed()


def validate_loop(loop: Loop, tol: float = CLOSURE_TOL) -> None:
    """Check the loop invariant: a single circle, or >=2 connected open curves."""
    if loop.is_circle():
        return
    if any(c.is_closed() for c in loop.curves):
        raise OpenLoop("circles cannot be chained with open curves")
    if len(loop.curves) < 2:
        raise OpenLoop("an open curve cannot close a loop on its own")
    ends = [curve_endpoints(c) for c in loop.curves]
    for i, (_, end) in enumerate(ends):
        nxt_start = ends[(i + 1) % len(ends)][0]
        gap = float(np.hypot(*(end - nxt_start)))
        if gap > tol:
            raise OpenLoop(f"gap {gap:.3g} between curve {i} and its successor exceeds {tol:.3g}")


@dataclass(frozen=True)
class Sketch:
    """Closed 2D profile: one or more loops in normalized [-1, 1] coordinates."""

    loops: tuple[Loop, ...]

    def __post_init__(self):
        if not self.loops or self.curve_count == 0:
            raise EmptySketch("sketch needs at least one curve")

    @property
    def curve_count(self) -> int:
        return sum(len(l.curves) for l in self.loops)

    @property
    def curves(self) -> tuple[Primitive, ...]:
        return tuple(c for l in self.loops for c in l.curves)


def validate_sketch(
    sketch: Sketch,
    closure_tol: float = CLOSURE_TOL,
    bound: float = COORD_BOUND,
    max_curves: int = MAX_CURVES,
) -> None:
    """Full sketch invariant: loop closure, curve budget, coordinate bounds."""
    if sketch.curve_count > max_curves:
        raise EmptySketch(f"sketch has {sketch.curve_count} curves, budget is {max_curves}")
    for loop in sketch.loops:
        validate_loop(loop, tol=closure_tol)
    lim = bound + 1e-9
    for c in sketch.curves:
        if c.kind is CurveKind.CIRCLE:
            cx, cy, r = c.params[:3]
            if abs(cx) + r > lim or abs(cy) + r > lim:
                raise InvalidPrimitive(f"circle leaves the [{-bound}, {bound}] square")
        else:
            coords = c.used_params
            if any(abs(v) > lim for v in coords):
                raise InvalidPrimitive(f"coordinate {max(coords, key=abs)} outside [{-bound}, {bound}]")


@dataclass(frozen=True)
class ExtrusionOp:
    """Extrusion operation: unit axis, sketch-plane origin, signed extent range."""

    axis: tuple[float, float, float]
    origin: tuple[float, float, float]
    extent: tuple[float, float]

    def __post_init__(self):
        norm = math.sqrt(sum(v * v for v in self.axis))
        if abs(norm - 1.0) > 1e-6:
            raise InvalidExtrusion(f"axis norm {norm} is not 1")
        if abs(norm - 1.0) > 1e-12:
            object.__setattr__(self, "axis", tuple(v / norm for v in self.axis))
        if not self.extent[0] < self.extent[1]:
            raise InvalidExtrusion(f"extent {self.extent} must satisfy t_min < t_max")


@dataclass(frozen=True)
class Extrusion:
    sketch: Sketch
    op: ExtrusionOp


@dataclass(frozen=True)
class Shape:
    """A solid: the union of one or more extrusions."""

    extrusions: tuple[Extrusion, ...]

    def __post_init__(self):
        if not self.extrusions:
            raise InvalidExtrusion("shape needs at least one extrusion")


class PlaneFrame:
    """Rigid map between world coordinates and (in-plane x, in-plane y, axial).

    The in-plane basis is deterministic: u is the Gram-Schmidt projection of
    the standard basis vector least aligned with the axis (ties broken by
    index order), v = axis x u. The map is an isometry; round-trips hold to
    machine precision.
    """

    def __init__(self, op: ExtrusionOp):
        e = np.array(op.axis, dtype=float)
        k_idx = int(np.argmin(np.abs(e)))
        k = np.zeros(3)
        k[k_idx] = 1.0
        u = k - (k @ e) * e
        u /= np.linalg.norm(u)
        self.origin = np.array(op.origin, dtype=float)
        self.axis = e
        self.u = u
        self.v = np.cross(e, u)

    def to_plane(self, points: np.ndarray) -> np.ndarray:
        """(N, 3) world points -> (N, 3) rows of (x, y, axial)."""
        d = np.atleast_2d(points) - self.origin
        return np.stack([d @ self.u, d @ self.v, d @ self.axis], axis=1)

    def to_world(self, plane_points: np.ndarray) -> np.ndarray:
        """Inverse of :meth:`to_plane`."""
        q = np.atleast_2d(plane_points)
        return (
            self.origin
            + q[:, 0:1] * self.u[None, :]
            + q[:, 1:2] * self.v[None, :]
            + q[:, 2:3] * self.axis[None, :]
        )

    def project_2d(self, points: np.ndarray) -> np.ndarray:
        """World points -> in-plane (x, y), dropping the axial coordinate."""
        return self.to_plane(points)[:, :2]


def sketch_plane_transform(op: ExtrusionOp) -> PlaneFrame:
    """Frame mapping world points to sketch coordinates for this extrusion."""
    return PlaneFrame(op)


def transform_primitive_2d(p: Primitive, fn) -> Primitive:
    """Apply a 2D isometry ``fn: (k,2)->(k,2)`` to a curve's defining points."""
    if p.kind is CurveKind.CIRCLE:
        c = fn(np.array([p.params[0:2]]))[0]
        return canonicalize_primitive(CurveKind.CIRCLE, (c[0], c[1], p.params[2]))
    used = np.array(p.used_params, dtype=float).reshape(-1, 2)
    return canonicalize_primitive(p.kind, tuple(fn(used).reshape(-1)))


def iter_primitives(sketch: Sketch) -> Iterable[tuple[int, int, Primitive]]:
    """Yield (loop index, curve index, primitive) in storage order."""
    for li, loop in enumerate(sketch.loops):
        for ci, curve in enumerate(loop.curves):
            yield li, ci, curve
