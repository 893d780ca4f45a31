"""Maximum-entropy (Gibbs) coordinates via a convex dual solve.

A point x interior to the polygon is matched by the exponential-family
distribution q_i proportional to exp(theta . v_i), where the dual
potential theta minimizes the strictly convex function

    F(theta) = log sum_i exp(theta . v_i) - theta . x.

The gradient of F is the moment mismatch, so the solve terminates when
the reproduced point agrees with x to ``SOLVE_TOL`` times the polygon
diameter.  Potentials are gauge-fixed: adding a constant to all exponents
leaves the distribution unchanged, so no constant term is carried.

Boundary points are not solved (the potential diverges there); they get
the closed-form coordinates of the face they lie on.  Solver state is
per-call, so concurrent evaluation of many points is safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    GEOM_EPS,
    NotInterior,
    OutsidePolygon,
    Polygon,
    edge_clearance,
    locate,
)

SOLVE_TOL = 1e-12
MAX_ITER = 200
MAX_COND = 1e12
ARMIJO_C = 1e-4
MAX_HALVINGS = 60


class NoConvergence(RuntimeError):
    """Newton solve did not reach tolerance; carries the best iterate."""

    def __init__(self, message, solution=None):
        super().__init__(message)
        self.solution = solution


@dataclass(frozen=True)
class GibbsSolution:
    theta: np.ndarray       # gauge-fixed dual potential, shape (2,)
    coords: np.ndarray      # vertex weights, shape (n,)
    entropy: float          # nats
    iterations: int
    residual: float         # norm of the moment mismatch


def softmax(exponents: np.ndarray) -> np.ndarray:
    """Normalized exponentials with max-subtraction.

    No exponent exceeds 0 after the shift, so overflow is impossible.
    """
    e = np.asarray(exponents, dtype=float)
    w = np.exp(e - e.max(axis=-1, keepdims=True))
    return w / w.sum(axis=-1, keepdims=True)


def log_partition(poly: Polygon, theta):
    """Value, gradient, and Hessian of theta -> log sum_i exp(theta . v_i).

    The gradient is the mean vertex under the induced distribution, and
    the Hessian is its covariance: positive semidefinite always, positive
    definite whenever the vertices affinely span the plane.
    """
    theta = np.asarray(theta, dtype=float)
    v = poly.vertices
    e = v @ theta
    shift = e.max()
    value = shift + float(np.log(np.sum(np.exp(e - shift))))
    q = softmax(e)
    mean = q @ v
    hess = (v.T * q) @ v - np.outer(mean, mean)
    return value, mean, hess


def gibbs_distribution(poly: Polygon, theta) -> np.ndarray:
    """Distribution q_i proportional to exp(theta . v_i); strictly positive."""
    theta = np.asarray(theta, dtype=float)
    return softmax(poly.vertices @ theta)


def entropy(coords) -> float:
    """Shannon entropy -sum p_i log p_i in nats, with 0 log 0 = 0."""
    p = np.asarray(coords, dtype=float)
    nz = p > 0.0
    return -float(np.sum(p[nz] * np.log(p[nz])))


def solve_gibbs(poly: Polygon, x) -> GibbsSolution:
    """Solve for the entropy-maximizing weights reproducing an interior x.

    Damped Newton on F(theta) = log_partition(theta) - theta . x with
    Armijo backtracking; falls back to a gradient step when the Hessian
    condition number exceeds ``MAX_COND``.  Raises :class:`NotInterior`
    for boundary or exterior points and :class:`NoConvergence` (carrying
    the best iterate) if the moment mismatch does not fall below
    ``SOLVE_TOL`` times the polygon diameter within ``MAX_ITER`` steps.
    """
    if not locate(poly, x).is_interior:
        raise NotInterior("Gibbs solve requires a strictly interior point")
    x = np.asarray(x, dtype=float)
    coords, thetas, iters, residuals, ok = _newton_batch(poly, x[None, :])
    solution = GibbsSolution(
        theta=thetas[0],
        coords=coords[0],
        entropy=entropy(coords[0]),
        iterations=int(iters[0]),
        residual=float(residuals[0]),
    )
    if not ok[0]:
        raise NoConvergence(
            f"residual {solution.residual:.3e} after {MAX_ITER} iterations",
            solution=solution,
        )
    return solution


def gibbs_coords(poly: Polygon, x) -> np.ndarray:
    """Gibbs coordinates on the closed polygon.

    Interior points are solved; a point on edge i gets the 1-simplex
    weights (1 - t, t) on the edge's endpoints, and a vertex gets the
    delta vector.
    """
    loc = locate(poly, x)
    if loc.is_outside:
        raise OutsidePolygon("point lies outside the polygon")
    if loc.is_interior:
        return solve_gibbs(poly, x).coords
    return _boundary_coords(poly, loc)


def gibbs_coords_many(poly: Polygon, points) -> np.ndarray:
    """Vectorized :func:`gibbs_coords` over an (m, 2) array of points.

    Interior points share one batched Newton solve; boundary points get
    their closed forms.  Raises :class:`OutsidePolygon` if any point is
    outside, :class:`NoConvergence` if any solve stalls.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    out = np.empty((len(pts), poly.n))
    interior = edge_clearance(poly, pts) > GEOM_EPS * poly.diameter
    for i in np.flatnonzero(~interior):
        loc = locate(poly, pts[i])
        if loc.is_outside:
            raise OutsidePolygon(f"point {pts[i]} lies outside the polygon")
        if loc.is_interior:
            out[i] = solve_gibbs(poly, pts[i]).coords
        else:
            out[i] = _boundary_coords(poly, loc)
    if interior.any():
        coords, _, _, residuals, ok = _newton_batch(poly, pts[interior])
        if not ok.all():
            worst = np.argmax(residuals * ~ok)
            raise NoConvergence(
                f"residual {residuals[worst]:.3e} after {MAX_ITER} iterations"
            )
        out[interior] = coords
    return out


def _boundary_coords(poly: Polygon, loc) -> np.ndarray:
    w = np.zeros(poly.n)
    if loc.kind == "vertex":
        w[loc.index - 1] = 1.0
    else:
        w[loc.index - 1] = 1.0 - loc.t
        w[loc.index % poly.n] = loc.t
    return w


def _newton_batch(poly: Polygon, targets: np.ndarray):
    """Damped Newton over a batch of interior targets.

    Returns (coords, thetas, iterations, residuals, converged); one row
    per target.  All points iterate in lockstep; converged points freeze.
    """
    v = poly.vertices
    m = len(targets)
    tol = SOLVE_TOL * poly.diameter
    vx = v[:, 0]
    vy = v[:, 1]

    theta = np.zeros((m, 2))
    iters = np.zeros(m, dtype=int)
    final_res = np.full(m, np.inf)
    converged = np.zeros(m, dtype=bool)

    def objective(th, target):
        e = th @ v.T
        shift = e.max(axis=1)
        return shift + np.log(np.exp(e - shift[:, None]).sum(axis=1)) - np.einsum(
            "ij,ij->i", th, target
        )

    for it in range(MAX_ITER):
        e = theta @ v.T
        q = softmax(e)
        mean = q @ v
        grad = mean - targets
        res = np.hypot(grad[:, 0], grad[:, 1])
        newly_done = ~converged & (res <= tol)
        final_res[newly_done] = res[newly_done]
        iters[newly_done] = it
        converged |= newly_done
        if converged.all():
            break

        active = np.flatnonzero(~converged)
        qa = q[active]
        mu = mean[active]
        g = grad[active]
        # Per-point 2x2 covariance Hessian.
        hxx = qa @ (vx * vx) - mu[:, 0] ** 2
        hyy = qa @ (vy * vy) - mu[:, 1] ** 2
        hxy = qa @ (vx * vy) - mu[:, 0] * mu[:, 1]
        det = hxx * hyy - hxy * hxy
        # Eigenvalue condition estimate for the PSD 2x2 matrix.
        tr = hxx + hyy
        disc = np.sqrt(np.maximum((hxx - hyy) ** 2 + 4 * hxy * hxy, 0.0))
        lo = 0.5 * (tr - disc)
        hi = 0.5 * (tr + disc)
        bad = (lo <= 0.0) | (hi > MAX_COND * lo)

        step = np.empty_like(g)
        with np.errstate(divide="ignore", invalid="ignore"):
            step[:, 0] = -(hyy * g[:, 0] - hxy * g[:, 1]) / det
            step[:, 1] = -(hxx * g[:, 1] - hxy * g[:, 0]) / det
        step[bad] = -g[bad]

        # Armijo backtracking, halving only the points that still violate
        # the sufficient-decrease bound.  Near the optimum the true decrease
        # sits below float resolution of the objective, so an absolute
        # roundoff floor keeps the full Newton step acceptable there.
        f0 = objective(theta[active], targets[active])
        noise = 8.0 * np.finfo(float).eps * (1.0 + np.abs(f0))
        slope = np.einsum("ij,ij->i", g, step)
        t = np.ones(len(active))
        for _ in range(MAX_HALVINGS):
            trial = theta[active] + t[:, None] * step
            f_trial = objective(trial, targets[active])
            violates = f_trial > f0 + ARMIJO_C * t * slope + noise
            if not violates.any():
                break
            t[violates] *= 0.5
        theta[active] += t[:, None] * step

    if not converged.all():
        e = theta @ v.T
        q = softmax(e)
        grad = q @ v - targets
        res = np.hypot(grad[:, 0], grad[:, 1])
        final_res[~converged] = res[~converged]
        iters[~converged] = MAX_ITER

    coords = softmax(theta @ v.T)
    return coords, theta, iters, final_res, converged
