"""Planar geometric primitives for convex polygons.

Signed areas, polygon validation, simplex/areal coordinates, edge frames
(outward normals and support values), and point location.  Everything here
is a pure function over immutable values, so concurrent read-only use is
safe without locking.

Conventions:
    * Polygons are strictly convex with vertices in counter-clockwise
      order.  Vertex indices are 1-based in documentation, I/O, and error
      messages; arrays are 0-based internally.
    * All degeneracy and on-boundary tests are scale-relative, using the
      tolerance ``GEOM_EPS`` times the polygon diameter (or diameter
      squared for areas).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Scale-relative tolerance for boundary classification and degeneracy tests.
GEOM_EPS = 1e-9

# Partition-of-unity tolerance for coordinate vectors.
WEIGHT_EPS = 1e-10

# Weights more negative than this indicate an internal error rather than
# floating-point noise.
NEGATIVE_WEIGHT_FLOOR = -1e-12


class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class TooFewVertices(GeometryError):
    pass


class NotConvex(GeometryError):
    pass


class WrongOrientation(GeometryError):
    pass


class DegenerateTriple(GeometryError):
    pass


class DegenerateTriangle(GeometryError):
    pass


class DegenerateSimplex(GeometryError):
    pass


class OutsidePolygon(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


def signed_area(p0, p1, p2) -> float:
    """Signed area of the triangle (p0, p1, p2).

    Positive iff the vertices are in counter-clockwise order; swapping any
    two arguments negates the result exactly.
    """
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    a = p1 - p0
    b = p2 - p0
    return 0.5 * float(a[0] * b[1] - a[1] * b[0])


@dataclass(frozen=True, eq=False)
class Polygon:
    """Strictly convex polygon with counter-clockwise vertices.

    Do not construct directly; use :func:`validate_polygon`, which enforces
    the convexity and orientation invariants.
    """

    vertices: np.ndarray  # shape (n, 2), read-only
    diameter: float

    @property
    def n(self) -> int:
        return len(self.vertices)

    def vertex(self, i: int) -> np.ndarray:
        """Vertex by 1-based index (cyclic)."""
        return self.vertices[(i - 1) % self.n]

    def area(self) -> float:
        v = self.vertices
        x, y = v[:, 0], v[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def to_dict(self) -> dict:
        return {"vertices": self.vertices.tolist()}


def validate_polygon(points) -> Polygon:
    """Validate a vertex list and build a :class:`Polygon`.

    Accepts only strictly convex counter-clockwise input and reorders
    nothing.  Raises :class:`TooFewVertices`, :class:`DegenerateTriple`
    (some consecutive triple is collinear within tolerance, or vertices
    coincide), :class:`WrongOrientation` (consistently clockwise input),
    or :class:`NotConvex`.
    """
    v = np.asarray(points, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise GeometryError("expected a sequence of (x, y) pairs")
    if not np.all(np.isfinite(v)):
        raise GeometryError("vertex coordinates must be finite")
    n = len(v)
    if n < 3:
        raise TooFewVertices(f"need at least 3 vertices, got {n}")

    diff = v[:, None, :] - v[None, :, :]
    dist = np.hypot(diff[..., 0], diff[..., 1])
    diameter = float(dist.max())
    if diameter == 0.0:
        raise DegenerateTriple("all vertices coincide")
    close = dist + np.eye(n) * diameter
    if close.min() <= GEOM_EPS * diameter:
        i, j = np.unravel_index(np.argmin(close), close.shape)
        raise DegenerateTriple(f"vertices {i + 1} and {j + 1} coincide")

    areas = np.array(
        [signed_area(v[i - 1], v[i], v[(i + 1) % n]) for i in range(n)]
    )
    tol = GEOM_EPS * diameter**2
    flat = np.abs(areas) <= tol
    if np.any(flat):
        i = int(np.argmax(flat))
        raise DegenerateTriple(
            f"vertices {i % n + 1 or n}, {i + 1}, {(i + 1) % n + 1} are collinear"
        )
    if np.all(areas < 0):
        raise WrongOrientation(
            "vertices are clockwise; reverse the list for counter-clockwise order"
        )
    if np.any(areas < 0):
        raise NotConvex("vertex sequence is not convex")

    v = v.copy()
    v.setflags(write=False)
    return Polygon(vertices=v, diameter=diameter)


def polygon_from_dict(data: dict) -> Polygon:
    """Build a polygon from the JSON object form ``{"vertices": [[x, y], ...]}``."""
    if not isinstance(data, dict) or "vertices" not in data:
        raise GeometryError('polygon JSON must be an object with a "vertices" key')
    return validate_polygon(data["vertices"])


def areal_coords(tri, x) -> np.ndarray:
    """Areal (barycentric) coordinates of ``x`` in the triangle ``tri``.

    The three weights sum to 1 and reconstruct ``x`` exactly up to
    rounding.  Components may be negative when ``x`` lies outside the
    triangle: this is the affine extension of the simplex coordinates.
    """
    tri = np.asarray(tri, dtype=float)
    x = np.asarray(x, dtype=float)
    total = signed_area(tri[0], tri[1], tri[2])
    scale = max(np.abs(tri).max(), 1.0)
    if abs(total) <= GEOM_EPS * scale**2:
        raise DegenerateTriangle("triangle area is zero within tolerance")
    a0 = signed_area(x, tri[1], tri[2])
    a1 = signed_area(tri[0], x, tri[2])
    a2 = signed_area(tri[0], tri[1], x)
    return np.array([a0, a1, a2]) / total


def simplex_volumetric_coords(simplex, x) -> np.ndarray:
    """Affine coordinates of ``x`` with respect to a d-simplex in d dimensions.

    ``simplex`` holds d+1 points of dimension d.  Coordinates are the
    ratios of (hyper)volume determinants; they sum to 1 and reduce to
    :func:`areal_coords` at d = 2.
    """
    s = np.asarray(simplex, dtype=float)
    x = np.asarray(x, dtype=float)
    d = s.shape[1]
    if s.shape[0] != d + 1:
        raise DegenerateSimplex(f"expected {d + 1} points in dimension {d}")
    m = (s[1:] - s[0]).T
    det = np.linalg.det(m)
    scale = max(np.abs(s).max(), 1.0)
    if abs(det) <= GEOM_EPS * scale**d * math.factorial(d):
        raise DegenerateSimplex("simplex volume is zero within tolerance")
    rest = np.linalg.solve(m, x - s[0])
    return np.concatenate([[1.0 - rest.sum()], rest])


def edge_frames(poly: Polygon, x):
    """Outward unit normals and support values of every edge, seen from ``x``.

    Edge i runs from vertex i to vertex i+1 (0-based here).  Returns a pair
    ``(normals, supports)`` of arrays with shapes (n, 2) and (n,), where
    ``supports[i]`` is the inner product of (v_i - x) with the edge normal:
    zero iff ``x`` lies on the supporting line of edge i, and positive for
    interior points.  Raises :class:`OutsidePolygon` when some support is
    negative beyond tolerance.
    """
    x = np.asarray(x, dtype=float)
    v = poly.vertices
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    # Rotate edge direction by -90 degrees: outward for a CCW polygon.
    normals = np.column_stack([edges[:, 1], -edges[:, 0]]) / lengths[:, None]
    supports = np.einsum("ij,ij->i", v - x[None, :], normals)
    tol = GEOM_EPS * poly.diameter
    if np.any(supports < -tol):
        raise OutsidePolygon("point lies outside the polygon")
    return normals, np.maximum(supports, 0.0)


@dataclass(frozen=True)
class Location:
    """Classification of a point against a polygon.

    ``kind`` is one of "interior", "edge", "vertex", "outside".  For an
    edge hit, ``index`` is the 1-based edge index (edge i joins vertices i
    and i+1) and ``t`` in (0, 1) is the parameter along it; for a vertex
    hit, ``index`` is the 1-based vertex index.
    """

    kind: str
    index: int | None = None
    t: float | None = None

    @property
    def is_interior(self) -> bool:
        return self.kind == "interior"

    @property
    def is_outside(self) -> bool:
        return self.kind == "outside"


def locate(poly: Polygon, x) -> Location:
    """Classify ``x`` as interior, on an edge, at a vertex, or outside.

    Uses the scale-relative tolerance ``GEOM_EPS * diameter``; points
    within tolerance of a vertex snap to the vertex, then edge hits are
    resolved, then strict outsideness.
    """
    x = np.asarray(x, dtype=float)
    v = poly.vertices
    n = poly.n
    tol = GEOM_EPS * poly.diameter

    vdist = np.hypot(*(v - x[None, :]).T)
    if vdist.min() <= tol:
        return Location("vertex", index=int(np.argmin(vdist)) + 1)

    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    rel = x[None, :] - v
    # Perpendicular signed distance to each edge line; positive inside.
    perp = (edges[:, 0] * rel[:, 1] - edges[:, 1] * rel[:, 0]) / lengths

    if np.any(perp < -tol):
        return Location("outside")

    on_line = np.flatnonzero(perp <= tol)
    for i in on_line:
        t = float(np.dot(rel[i], edges[i]) / lengths[i] ** 2)
        if 0.0 < t < 1.0:
            return Location("edge", index=int(i) + 1, t=t)
    if len(on_line):
        # On an edge line but beyond its span: outside (vertex snaps were
        # already handled above).
        return Location("outside")
    return Location("interior")


def edge_clearance(poly: Polygon, points) -> np.ndarray:
    """Minimum signed perpendicular distance to the edge lines, per point.

    Positive strictly inside, negative outside; a value above the locate
    tolerance ``GEOM_EPS * diameter`` certifies an interior classification
    identical to :func:`locate`.  Vectorized over an (m, 2) point array.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    v = poly.vertices
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    rel_x = pts[:, 0][:, None] - v[:, 0][None, :]
    rel_y = pts[:, 1][:, None] - v[:, 1][None, :]
    perp = (edges[:, 0][None, :] * rel_y - edges[:, 1][None, :] * rel_x) / lengths
    return perp.min(axis=1)


def finalize_coords(weights: np.ndarray) -> np.ndarray:
    """Clamp floating-point noise in a coordinate vector.

    Tiny negative weights (above ``NEGATIVE_WEIGHT_FLOOR``) are clamped to
    zero; anything more negative signals an internal error.  The sum is
    checked against the partition-of-unity tolerance.
    """
    w = np.asarray(weights, dtype=float)
    if w.min() < NEGATIVE_WEIGHT_FLOOR:
        raise AssertionError(
            f"coordinate weight {w.min():.3e} below the clamping floor"
        )
    w = np.maximum(w, 0.0)
    if abs(w.sum() - 1.0) > WEIGHT_EPS:
        raise AssertionError(f"coordinate weights sum to {w.sum()!r}, not 1")
    return w
