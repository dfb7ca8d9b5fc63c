"""Shared geometry builders for the test suite.

The random sketch generator here is deliberately independent of the library's
dataset synthesizer so it can serve as a second opinion in property tests.
"""

import math

import numpy as np
import pytest

from sketchrec.core import (
    CurveKind,
    Extrusion,
    ExtrusionOp,
    Loop,
    Primitive,
    Shape,
    Sketch,
    canonicalize_primitive,
)


def make_line(d0, d1) -> Primitive:
    m = (0.5 * (d0[0] + d1[0]), 0.5 * (d0[1] + d1[1]))
    return canonicalize_primitive(CurveKind.LINE, (m[0], m[1], d1[0], d1[1]))


def make_arc(s, m, e) -> Primitive:
    return canonicalize_primitive(CurveKind.ARC, (m[0], m[1], s[0], s[1], e[0], e[1]))


def make_circle(c, r) -> Primitive:
    return canonicalize_primitive(CurveKind.CIRCLE, (c[0], c[1], r))


def square_loop(half: float = 1.0, center=(0.0, 0.0)) -> Loop:
    cx, cy = center
    corners = [
        (cx - half, cy - half),
        (cx + half, cy - half),
        (cx + half, cy + half),
        (cx - half, cy + half),
    ]
    return Loop(tuple(make_line(corners[i], corners[(i + 1) % 4]) for i in range(4)))


def square_sketch(half: float = 1.0, center=(0.0, 0.0)) -> Sketch:
    return Sketch((square_loop(half, center),))


def circle_sketch(c=(0.0, 0.0), r: float = 1.0) -> Sketch:
    return Sketch((Loop((make_circle(c, r),)),))


def random_polygon_vertices(rng: np.random.Generator, n: int, radius_lo=0.4, radius_hi=0.8):
    angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n))
    # keep corners apart so edges stay long enough for arc bulges
    while np.min(np.diff(np.concatenate([angles, [angles[0] + 2 * math.pi]]))) < 0.3:
        angles = np.sort(rng.uniform(0.0, 2.0 * math.pi, size=n))
    radii = rng.uniform(radius_lo, radius_hi, size=n)
    return np.stack([radii * np.cos(angles), radii * np.sin(angles)], axis=1)


def random_loop(rng: np.random.Generator, n_curves: int) -> Loop:
    if n_curves == 1:
        r = rng.uniform(0.25, 0.8)
        c = rng.uniform(-0.9 + r, 0.9 - r, size=2) if r < 0.9 else (0.0, 0.0)
        return Loop((make_circle(c, r),))
    verts = random_polygon_vertices(rng, n_curves)
    centroid = verts.mean(axis=0)
    curves = []
    for i in range(n_curves):
        a, b = verts[i], verts[(i + 1) % n_curves]
        if rng.random() < 0.5:
            curves.append(make_line(a, b))
        else:
            mid = 0.5 * (a + b)
            outward = mid - centroid
            outward /= np.linalg.norm(outward)
            bulge = rng.uniform(0.05, 0.15) * np.linalg.norm(b - a)
            curves.append(make_arc(a, mid + bulge * outward, b))
    return Loop(tuple(curves))


def random_sketch(rng: np.random.Generator, with_hole_prob: float = 0.3) -> Sketch:
    loops = [random_loop(rng, int(rng.integers(3, 7)))]
    if rng.random() < with_hole_prob:
        loops.append(Loop((make_circle((0.0, 0.0), rng.uniform(0.08, 0.2)),)))
    return Sketch(tuple(loops))


def cylinder_shape(r: float = 1.0, z0: float = 0.0, z1: float = 2.0) -> Shape:
    op = ExtrusionOp(axis=(0.0, 0.0, 1.0), origin=(0.0, 0.0, 0.0), extent=(z0, z1))
    return Shape((Extrusion(circle_sketch(r=r), op),))


def box_shape(half: float = 0.5, center=(0.0, 0.0, 0.0)) -> Shape:
    op = ExtrusionOp(
        axis=(0.0, 0.0, 1.0),
        origin=(center[0], center[1], 0.0),
        extent=(center[2] - half, center[2] + half),
    )
    return Shape((Extrusion(square_sketch(half), op),))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
