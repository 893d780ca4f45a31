"""Wachspress rational coordinates on convex polygons.

Interior points use the triangle-area weight ratio; boundary points use
the rescaled support-function form, which stays finite on edges and at
vertices.  Normalized coordinates satisfy partition of unity and linear
precision on the whole closed polygon.
"""

from __future__ import annotations

import numpy as np

from .geometry import (
    GEOM_EPS,
    NotInterior,
    OutsidePolygon,
    Polygon,
    edge_clearance,
    edge_frames,
    finalize_coords,
    locate,
    signed_area,
)


def wachspress_weights_interior(poly: Polygon, x) -> np.ndarray:
    """Unnormalized Wachspress weights at a strictly interior point.

    w_i = A(v_{i-1}, v_i, v_{i+1}) / (A(v_{i-1}, v_i, x) * A(x, v_i, v_{i+1})),
    all positive in the interior.  Raises :class:`NotInterior` elsewhere,
    where the denominators can vanish.
    """
    if not locate(poly, x).is_interior:
        raise NotInterior("Wachspress interior weights need an interior point")
    x = np.asarray(x, dtype=float)
    v = poly.vertices
    n = poly.n
    # a[i] = A(x, v_i, v_{i+1}), the fan triangle over edge i.
    a = np.array([signed_area(x, v[i], v[(i + 1) % n]) for i in range(n)])
    b = np.array(
        [signed_area(v[i - 1], v[i], v[(i + 1) % n]) for i in range(n)]
    )
    return b / (np.roll(a, 1) * a)


def rescaled_weights(poly: Polygon, x) -> np.ndarray:
    """Wachspress weights rescaled to stay finite on the boundary.

    w'_i is the corner determinant det[n_{i-1}, n_i] times the product of
    the support values of every edge not incident to vertex i.  At an
    interior point this is the interior weight times the full support
    product; on the boundary it vanishes exactly for the vertices not on
    the relevant face.
    """
    normals, h = edge_frames(poly, x)  # raises OutsidePolygon
    n = poly.n
    prev = np.roll(normals, 1, axis=0)
    dets = prev[:, 0] * normals[:, 1] - prev[:, 1] * normals[:, 0]
    weights = np.empty(n)
    for i in range(n):
        mask = np.ones(n, dtype=bool)
        mask[i - 1] = False
        mask[i] = False
        weights[i] = dets[i] * np.prod(h[mask])
    return weights


def wachspress_coords(poly: Polygon, x) -> np.ndarray:
    """Normalized Wachspress coordinates, valid on the closed polygon."""
    loc = locate(poly, x)
    if loc.is_outside:
        raise OutsidePolygon("point lies outside the polygon")
    if loc.is_interior:
        w = wachspress_weights_interior(poly, x)
    else:
        w = rescaled_weights(poly, x)
    return finalize_coords(w / w.sum())


def wachspress_coords_many(poly: Polygon, points) -> np.ndarray:
    """Vectorized :func:`wachspress_coords` over an (m, 2) point array.

    Certified-interior points share one array evaluation of the interior
    formula; the few boundary-band points fall back to the scalar path.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    v = poly.vertices
    n = poly.n
    out = np.empty((len(pts), n))

    interior = edge_clearance(poly, pts) > GEOM_EPS * poly.diameter
    for i in np.flatnonzero(~interior):
        out[i] = wachspress_coords(poly, pts[i])
    if interior.any():
        p = pts[interior]
        vx, vy = v[:, 0], v[:, 1]
        nx_, ny_ = np.roll(vx, -1), np.roll(vy, -1)
        # a[:, i] = A(x, v_i, v_{i+1}) for every interior point at once.
        a = 0.5 * (
            (vx[None, :] - p[:, 0][:, None]) * (ny_[None, :] - p[:, 1][:, None])
            - (vy[None, :] - p[:, 1][:, None]) * (nx_[None, :] - p[:, 0][:, None])
        )
        b = np.array(
            [signed_area(v[i - 1], v[i], v[(i + 1) % n]) for i in range(n)]
        )
        w = b[None, :] / (np.roll(a, 1, axis=1) * a)
        out[interior] = w / w.sum(axis=1, keepdims=True)
    return out
