"""Uniform handling of polygon coordinate systems.

A coordinate system assigns to each polygon vertex a weight function on
the polygon such that the weighted vertex sum reproduces every point
(partition of the identity).  The variants here are the areal system on
triangles, Wachspress, Gibbs, chordal for a fixed decomposition,
cartographic for an orbit representative, and convex mixtures of other
systems.  Mixtures remain valid coordinate systems because the defining
properties are affine in the system.

Also provided: pointwise discrepancy vectors between two systems (the
first n - 1 coordinate differences), lattice sampling of the discrepancy
norm over a polygon, and the closed-form equator ordinate of the built-in
reference quadrilateral, along which its Gibbs and Wachspress coordinates
agree.

Evaluation is pure; systems are immutable and may be shared between
threads, and grid sampling may be parallelized over lattice points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import chordal as _chordal
from . import gibbs as _gibbs
from . import wachspress as _wachspress
from .chordal import ChordalDecomposition
from .geometry import (
    GEOM_EPS,
    GeometryError,
    OutsidePolygon,
    Polygon,
    areal_coords,
    edge_clearance,
    locate,
)


class BadWeights(ValueError):
    pass


class OutOfRange(ValueError):
    pass


class CoordinateSystem:
    """Base class: an evaluable handle obeying partition of identity."""

    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        raise NotImplementedError

    def evaluate_many(self, poly: Polygon, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        return np.array([self.evaluate(poly, p) for p in pts])


@dataclass(frozen=True)
class ArealSystem(CoordinateSystem):
    """Unique simplex coordinates; triangles only."""

    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        if poly.n != 3:
            raise GeometryError("areal coordinates require a triangle")
        if locate(poly, x).is_outside:
            raise OutsidePolygon("point lies outside the polygon")
        return areal_coords(poly.vertices, x)


@dataclass(frozen=True)
class WachspressSystem(CoordinateSystem):
    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        return _wachspress.wachspress_coords(poly, x)

    def evaluate_many(self, poly: Polygon, points) -> np.ndarray:
        return _wachspress.wachspress_coords_many(poly, points)


@dataclass(frozen=True)
class GibbsSystem(CoordinateSystem):
    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        return _gibbs.gibbs_coords(poly, x)

    def evaluate_many(self, poly: Polygon, points) -> np.ndarray:
        # One batched Newton solve for all interior points.
        return _gibbs.gibbs_coords_many(poly, points)


@dataclass(frozen=True)
class ChordalSystem(CoordinateSystem):
    decomposition: ChordalDecomposition

    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        if poly.n != self.decomposition.n:
            raise GeometryError("decomposition size does not match polygon")
        return _chordal.chordal_coords(poly, self.decomposition, x)


@dataclass(frozen=True)
class CartographicSystem(CoordinateSystem):
    representative: ChordalDecomposition

    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        if poly.n != self.representative.n:
            raise GeometryError("decomposition size does not match polygon")
        return _chordal.cartographic_coords(poly, self.representative, x)


@dataclass(frozen=True)
class MixtureSystem(CoordinateSystem):
    parts: tuple  # of (CoordinateSystem, float) pairs

    def evaluate(self, poly: Polygon, x) -> np.ndarray:
        total = np.zeros(poly.n)
        for system, weight in self.parts:
            total += weight * system.evaluate(poly, x)
        return total

    def evaluate_many(self, poly: Polygon, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        total = np.zeros((len(pts), 1))
        for system, weight in self.parts:
            total = total + weight * system.evaluate_many(poly, pts)
        return total


def convex_combine(parts) -> CoordinateSystem:
    """Mix coordinate systems with positive weights summing to 1.

    The mixture is again a coordinate system: partition of unity and
    linear precision hold pointwise.
    """
    parts = [(system, float(weight)) for system, weight in parts]
    if not parts:
        raise BadWeights("a mixture needs at least one part")
    for _, weight in parts:
        if not weight > 0.0:
            raise BadWeights("mixture weights must be positive")
    total = sum(weight for _, weight in parts)
    if abs(total - 1.0) > 1e-10:
        raise BadWeights(f"mixture weights sum to {total!r}, not 1")
    return MixtureSystem(parts=tuple(parts))


def evaluate(system: CoordinateSystem, poly: Polygon, x) -> np.ndarray:
    """Coordinates of x under the given system (dispatch helper)."""
    return system.evaluate(poly, x)


def discrepancy(
    system_a: CoordinateSystem,
    system_b: CoordinateSystem,
    poly: Polygon,
    x,
) -> np.ndarray:
    """First n - 1 coordinate differences between two systems at x.

    Completing the vector with the negated sum yields an n-vector that is
    annihilated by the affine conditions (sum zero, weighted vertex sum
    zero), so the discrepancies live in an (n - 3)-dimensional space; for
    quadrilaterals all non-vanishing discrepancy vectors are parallel.
    """
    a = system_a.evaluate(poly, x)
    b = system_b.evaluate(poly, x)
    return (a - b)[:-1]


def discrepancy_grid(
    system_a: CoordinateSystem,
    system_b: CoordinateSystem,
    poly: Polygon,
    resolution: int,
) -> list[tuple[float, float, float]]:
    """Discrepancy norms on a lattice over the polygon's bounding box.

    Samples a resolution x resolution lattice, keeps the points inside or
    on the polygon, and records the Euclidean norm of the discrepancy
    vector.  Rows are in row-major lattice order (y outer, x inner).
    """
    if resolution < 2:
        raise ValueError("grid resolution must be at least 2")
    v = poly.vertices
    xs = np.linspace(v[:, 0].min(), v[:, 0].max(), resolution)
    ys = np.linspace(v[:, 1].min(), v[:, 1].max(), resolution)
    gx, gy = np.meshgrid(xs, ys)  # row-major: y outer, x inner
    lattice = np.column_stack([gx.ravel(), gy.ravel()])
    clearance = edge_clearance(poly, lattice)
    tol = GEOM_EPS * poly.diameter
    keep = clearance > tol
    # Points in the tolerance band get the exact scalar classification.
    for i in np.flatnonzero(np.abs(clearance) <= tol):
        keep[i] = not locate(poly, lattice[i]).is_outside
    if not keep.any():
        return []
    pts = lattice[keep]
    kept = [(float(x), float(y)) for x, y in pts]
    diff = system_a.evaluate_many(poly, pts) - system_b.evaluate_many(poly, pts)
    norms = np.linalg.norm(diff[:, :-1], axis=1)
    return [(float(x), float(y), float(n)) for (x, y), n in zip(kept, norms)]


def equator_b(a: float) -> float:
    """Ordinate of the reference quadrilateral's equator at abscissa a.

    The curve runs between the vertices (1, 0) and (-1, 1/2) through the
    interior; along it the Gibbs and Wachspress coordinates agree.
    """
    if not -1.0 <= a <= 1.0:
        raise OutOfRange("equator abscissa must lie in [-1, 1]")
    return (-12.0 - 13.0 * a + math.sqrt(625.0 + 143.0 * (1.0 - a * a))) / 52.0
