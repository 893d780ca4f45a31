"""Operator algebra on the unit interval and on convex sets.

The interval operators (complement, product, dual product, implication)
restrict to the Boolean truth tables of NOT/AND/OR/IMPLIES on {0, 1}.
``binary_op`` realizes an operator p as the two-point convex combination
x(1-p) + yp, and ``skew_assoc_transform`` is the invertible change of
operator pair that re-brackets a nested combination.

All functions are pure and accept floats or numpy arrays for the point
arguments of ``binary_op``.
"""

from __future__ import annotations

import numpy as np


def complement(p):
    """1 - p (Boolean NOT on {0, 1}); involutive."""
    return 1.0 - p


def product(p, q):
    """pq (Boolean AND on {0, 1})."""
    return p * q


def dual_product(p, q):
    """p + q - pq (Boolean OR on {0, 1}).

    De Morgan's law holds: dual_product(p, q) == 1 - (1 - p)(1 - q).
    """
    return p + q - p * q


def implication(p, q):
    """1 if p == 0, else q / p (Boolean IMPLIES on {0, 1})."""
    if p == 0:
        return 1.0
    return q / p


def binary_op(x, y, p):
    """Combine two points of a convex set: x(1 - p) + yp.

    Operators at the boundary p in {0, 1} are accepted (they degenerate to
    selection of x or y); coordinate weights reach 0 and 1 on polygon
    boundaries, so the closed interval is required here.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = x * (1.0 - p) + y * p
    return float(out) if out.ndim == 0 else out


def skew_assoc_transform(a: float, b: float) -> tuple[float, float]:
    """Re-bracketing operator pair: x(yz a)b == (xy c)z d for all x, y, z.

    Given a, b in (0, 1), returns (c, d) with d = ab and c the solution of
    dual_product(c, d) = b.  Both sides of the identity carry the weights
    (1 - b, b - ab, ab) on (x, y, z).
    """
    if not (0.0 < a < 1.0 and 0.0 < b < 1.0):
        raise ValueError("operators must lie strictly between 0 and 1")
    d = a * b
    c = (b - d) / (1.0 - d)
    return c, d


def skew_assoc_inverse(c: float, d: float) -> tuple[float, float]:
    """Inverse of :func:`skew_assoc_transform`: recover (a, b) from (c, d)."""
    if not (0.0 < c < 1.0 and 0.0 < d < 1.0):
        raise ValueError("operators must lie strictly between 0 and 1")
    b = dual_product(c, d)
    return d / b, b
