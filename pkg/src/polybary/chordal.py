"""Triangulation combinatorics and the chordal/cartographic coordinates.

A chordal decomposition cuts the convex n-gon into n - 2 triangles by
n - 3 pairwise non-crossing chords.  This module enumerates all such
decompositions, computes their degree sequences and dihedral orbits,
builds the parsing tree that identifies and orients the triangular
regions, assigns per-region sign codes for point location, and evaluates
the resulting coordinate systems:

    * chordal coordinates: areal coordinates within the region containing
      the query point, scattered into the full vertex vector;
    * cartographic coordinates: a stabilizer-weighted average of chordal
      coordinates over a dihedral-group orbit of decompositions.

Vertex labels are 1-based everywhere, matching the combinatorial notation
in I/O (chords print as "j-k").  Decompositions, trees, and code tables
are immutable once built, so they may be shared freely across threads.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .geometry import (
    GEOM_EPS,
    GeometryError,
    OutsidePolygon,
    Polygon,
    areal_coords,
    finalize_coords,
    locate,
    signed_area,
)


class InvalidDecomposition(ValueError):
    pass


class DegenerateGeometry(GeometryError):
    """A region sample point lands on a chord line: sign codes ambiguous."""


def standard_pair(a: int, b: int, n: int) -> tuple[int, int]:
    """Order a vertex pair: lexicographic except {1, n}, which orders n < 1."""
    if {a, b} == {1, n}:
        return (n, 1)
    return (a, b) if a < b else (b, a)


def chords_cross(c1: tuple[int, int], c2: tuple[int, int]) -> bool:
    """Whether two chords of the n-cycle cross in convex position."""
    a, b = c1
    c, d = c2
    return (a < c < b < d) or (c < a < d < b)


@dataclass(frozen=True)
class ChordalDecomposition:
    """A triangulation of the convex n-gon by n - 3 non-crossing chords."""

    n: int
    chords: frozenset

    def __post_init__(self):
        n = self.n
        if n < 3:
            raise InvalidDecomposition("polygon size must be at least 3")
        chords = frozenset(tuple(int(e) for e in c) for c in self.chords)
        object.__setattr__(self, "chords", chords)
        if len(chords) != n - 3:
            raise InvalidDecomposition(
                f"a decomposition of an {n}-gon needs {n - 3} chords, "
                f"got {len(chords)}"
            )
        for j, k in chords:
            if not (1 <= j < k <= n):
                raise InvalidDecomposition(
                    f"chord {j}-{k} is not standard-ordered within 1..{n}"
                )
            if k - j < 2 or (j, k) == (1, n):
                raise InvalidDecomposition(
                    f"{j}-{k} joins adjacent vertices, so it is not a chord"
                )
        pairs = sorted(chords)
        for i, c1 in enumerate(pairs):
            for c2 in pairs[i + 1 :]:
                if chords_cross(c1, c2):
                    raise InvalidDecomposition(f"chords {c1} and {c2} cross")

    def sorted_chords(self) -> list[tuple[int, int]]:
        return sorted(self.chords)

    def to_text(self) -> str:
        return ",".join(f"{j}-{k}" for j, k in self.sorted_chords())

    @classmethod
    def from_text(cls, n: int, text: str) -> "ChordalDecomposition":
        """Parse the comma-separated chord form, e.g. "1-3,1-5,3-5"."""
        text = text.strip()
        chords = []
        if text:
            for item in text.split(","):
                try:
                    j, k = (int(part) for part in item.split("-"))
                except ValueError:
                    raise InvalidDecomposition(
                        f"bad chord {item!r}: expected j-k with integers"
                    ) from None
                chords.append((j, k))
        return cls(n, frozenset(chords))


def enumerate_decompositions(n: int) -> list[ChordalDecomposition]:
    """All triangulations of the convex n-gon, in deterministic order.

    Recursion over the apex of the base edge, ascending; the count is the
    Catalan number C(n - 2).
    """
    if n < 3:
        raise InvalidDecomposition("polygon size must be at least 3")

    def rec(i: int, j: int) -> list[frozenset]:
        if j - i < 2:
            return [frozenset()]
        out = []
        for k in range(i + 1, j):
            extra = []
            if k - i >= 2:
                extra.append((i, k))
            if j - k >= 2:
                extra.append((k, j))
            for left in rec(i, k):
                for right in rec(k, j):
                    out.append(left | right | frozenset(extra))
        return out

    return [ChordalDecomposition(n, chords) for chords in rec(1, n)]


def catalan(m: int) -> int:
    return math.comb(2 * m, m) // (m + 1)


def cds(delta: ChordalDecomposition) -> tuple[int, ...]:
    """Chordal degree sequence: sorted nonzero vertex degrees of the chord graph.

    The degrees sum to 2(n - 3).  Invariant under the dihedral action.
    """
    degree = Counter()
    for j, k in delta.chords:
        degree[j] += 1
        degree[k] += 1
    return tuple(sorted(degree.values()))


def format_cds(sequence: tuple[int, ...]) -> str:
    """Compact text for a degree sequence, e.g. (1,1,2,2) -> "1^2 2^2"."""
    if not sequence:
        return "-"
    counts = Counter(sequence)
    parts = []
    for value in sorted(counts):
        m = counts[value]
        parts.append(f"{value}^{m}" if m > 1 else f"{value}")
    return " ".join(parts)


def dihedral_apply(
    delta: ChordalDecomposition, g: tuple[int, bool]
) -> ChordalDecomposition:
    """Apply the dihedral element g = (rotation amount, reflect flag).

    The rotation adds 1 per unit to every vertex label (mod n) and the
    reflection negates labels (mod n); reflection acts first.  The image
    is a valid decomposition with the same degree sequence.
    """
    n = delta.n
    rot, reflect = g

    def act(i: int) -> int:
        if reflect:
            i = (-i) % n or n
        out = (i + rot) % n
        return out or n

    chords = frozenset(
        standard_pair(act(j), act(k), n) for j, k in delta.chords
    )
    return ChordalDecomposition(n, chords)


def dihedral_group(n: int) -> list[tuple[int, bool]]:
    """All 2n elements of the dihedral group as (rotation, reflect) pairs."""
    return [(r, s) for s in (False, True) for r in range(n)]


def orbit_with_multiplicity(
    delta: ChordalDecomposition,
) -> list[tuple[ChordalDecomposition, Fraction]]:
    """Distinct dihedral images of a decomposition with their orbit weights.

    Summing the coordinate functions over all 2n group elements and
    dividing by 2n weights each distinct image by its stabilizer size over
    2n, so the weights are rational and sum to 1.
    """
    n = delta.n
    images = Counter(dihedral_apply(delta, g) for g in dihedral_group(n))
    orbit = sorted(images.items(), key=lambda item: item[0].to_text())
    return [(image, Fraction(count, 2 * n)) for image, count in orbit]


def representative_for_cds(
    n: int, sequence: tuple[int, ...]
) -> ChordalDecomposition:
    """First enumerated decomposition with the requested degree sequence.

    Distinct orbits can share a CDS in principle, so coordinate evaluation
    takes an explicit representative; this lookup is the convenience path.
    """
    target = tuple(sorted(sequence))
    for delta in enumerate_decompositions(n):
        if cds(delta) == target:
            return delta
    raise InvalidDecomposition(
        f"no decomposition of an {n}-gon has degree sequence {target}"
    )


@dataclass(frozen=True)
class OrientedRegion:
    """One triangle of a decomposition, counter-clockwise, with its tree path."""

    vertices: tuple[int, int, int]  # canonical rotation: smallest label first
    label: str                      # word over {L, R}; "" at the root


@dataclass(frozen=True)
class RegionNode:
    region: OrientedRegion
    base: tuple[int, int]
    left: "RegionNode | tuple[int, int]"   # child node or boundary-edge leaf
    right: "RegionNode | tuple[int, int]"


@dataclass(frozen=True)
class ParsingTree:
    """Rooted binary tree of oriented regions, anchored at the base edge 1-2."""

    decomposition: ChordalDecomposition
    root: RegionNode

    def regions(self) -> list[OrientedRegion]:
        """All n - 2 regions in pre-order (node, left subtree, right subtree)."""
        out = []

        def walk(node):
            if isinstance(node, RegionNode):
                out.append(node.region)
                walk(node.left)
                walk(node.right)

        walk(self.root)
        return out

    def boundary_leaves(self) -> list[tuple[int, int]]:
        """Non-root leaves in in-order; with the root edge they walk the cycle."""
        out = []

        def walk(node):
            if isinstance(node, RegionNode):
                walk(node.left)
                walk(node.right)
            else:
                out.append(node)

        walk(self.root)
        return out


def _canonical_triple(a: int, b: int, c: int) -> tuple[int, int, int]:
    # Rotate the cyclic triple so the smallest label comes first.
    triple = (a, b, c)
    i = triple.index(min(triple))
    return triple[i:] + triple[:i]


def build_parsing_tree(delta: ChordalDecomposition) -> ParsingTree:
    """Build the region tree by recursive splitting at the base edge.

    Each step selects the triangle over the current base edge w1-w2: its
    apex d is the unique vertex whose joins to w1 and w2 are both chords
    of the decomposition or boundary edges of the current sub-polygon.
    The left output re-bases on w1-d, the right on d-w2; a side whose join
    is a boundary edge terminates as a leaf.
    """
    chordset = {frozenset(c) for c in delta.chords}

    def split(w: tuple[int, ...], label: str) -> RegionNode:
        r = len(w)
        apex = None
        for di in range(2, r):
            left_ok = di == r - 1 or frozenset((w[0], w[di])) in chordset
            right_ok = di == 2 or frozenset((w[1], w[di])) in chordset
            if left_ok and right_ok:
                if apex is not None:
                    raise InvalidDecomposition(
                        "ambiguous apex: chord set is not a triangulation"
                    )
                apex = di
        if apex is None:
            raise InvalidDecomposition(
                "no apex over the base edge: chord set is not a triangulation"
            )

        region = OrientedRegion(
            vertices=_canonical_triple(w[0], w[1], w[apex]), label=label
        )
        if apex == r - 1:
            left = (w[r - 1], w[0])
        else:
            left = split((w[0],) + w[apex:], label + "L")
        if apex == 2:
            right = (w[1], w[2])
        else:
            right = split((w[apex],) + w[1:apex], label + "R")
        return RegionNode(region=region, base=(w[0], w[1]), left=left, right=right)

    n = delta.n
    root = split(tuple(range(1, n + 1)), "")
    return ParsingTree(decomposition=delta, root=root)


def areal_function(poly: Polygon, j: int, k: int, x) -> float:
    """Signed area A(x, v_j, v_k): zero on the j-k line, positive to its left."""
    return signed_area(x, poly.vertex(j), poly.vertex(k))


@dataclass(frozen=True)
class RegionCodeTable:
    """Per-region sign codes over the chords, for point location.

    Bit order follows ``chords`` (ascending); bit 1 marks the non-negative
    side of the chord's areal function, 0 the non-positive side.  Codes
    are listed in parsing-tree pre-order and are pairwise distinct.
    """

    chords: tuple[tuple[int, int], ...]
    codes: tuple[tuple[OrientedRegion, str], ...]

    def code_of(self, region: OrientedRegion) -> str:
        for reg, code in self.codes:
            if reg == region:
                return code
        raise KeyError(region)


def region_codes(tree: ParsingTree, poly: Polygon) -> RegionCodeTable:
    """Sign each region against each chord from one interior sample point.

    The sign of a chord's areal function is constant on each open region,
    so the region centroid determines the whole code.  A centroid landing
    on a chord line (within tolerance) raises :class:`DegenerateGeometry`.
    """
    delta = tree.decomposition
    if poly.n != delta.n:
        raise GeometryError("parsing tree and polygon sizes differ")
    chords = tuple(delta.sorted_chords())
    tol = GEOM_EPS * poly.diameter**2
    rows = []
    for region in tree.regions():
        centroid = sum(poly.vertex(i) for i in region.vertices) / 3.0
        bits = []
        for j, k in chords:
            value = areal_function(poly, j, k, centroid)
            if abs(value) <= tol:
                raise DegenerateGeometry(
                    f"region {region.vertices} sits on chord {j}-{k}"
                )
            bits.append("1" if value > 0 else "0")
        rows.append((region, "".join(bits)))
    codes = [code for _, code in rows]
    if len(set(codes)) != len(codes):
        raise DegenerateGeometry("region sign codes are not distinct")
    return RegionCodeTable(chords=chords, codes=tuple(rows))


@lru_cache(maxsize=256)
def _located_tables(poly: Polygon, delta: ChordalDecomposition):
    tree = build_parsing_tree(delta)
    return tree, region_codes(tree, poly)


def locate_region(
    delta: ChordalDecomposition, poly: Polygon, x
) -> list[OrientedRegion]:
    """Regions whose closed triangles contain x, in pre-order.

    Chord values within tolerance of zero wildcard both bits, so a point
    on a chord reports both adjacent regions and a vertex reports every
    incident region.  Raises :class:`OutsidePolygon` for exterior points.
    """
    if locate(poly, x).is_outside:
        raise OutsidePolygon("point lies outside the polygon")
    _, table = _located_tables(poly, delta)
    tol = GEOM_EPS * poly.diameter**2
    values = [areal_function(poly, j, k, x) for j, k in table.chords]
    matches = []
    for region, code in table.codes:
        for value, bit in zip(values, code):
            if abs(value) <= tol:
                continue
            if (value > 0) != (bit == "1"):
                break
        else:
            matches.append(region)
    return matches


def _region_triangle(poly: Polygon, region: OrientedRegion) -> np.ndarray:
    return np.array([poly.vertex(i) for i in region.vertices])


def chordal_coords(poly: Polygon, delta: ChordalDecomposition, x) -> np.ndarray:
    """Chordal coordinates: areal weights in a containing region, scattered.

    The value does not depend on which containing region is used (they
    agree on shared chords and vertices); the earliest pre-order region
    that actually contains the point numerically is evaluated.
    """
    regions = locate_region(delta, poly, x)
    if not regions:
        raise DegenerateGeometry("no region sign code matches the point")
    best = None
    best_min = -np.inf
    for region in regions:
        w = areal_coords(_region_triangle(poly, region), x)
        low = w.min()
        if low >= -1e-12:
            best, best_min = (region, w), low
            break
        if low > best_min:
            best, best_min = (region, w), low
    region, weights = best
    out = np.zeros(poly.n)
    for vertex, w in zip(region.vertices, weights):
        out[vertex - 1] = w
    if best_min < 0.0:
        # The point sat within the wildcard band of a chord; clamp the
        # stray negative weight and renormalize.
        out = np.maximum(out, 0.0)
        out /= out.sum()
    return finalize_coords(out)


def cartographic_coords(
    poly: Polygon, representative: ChordalDecomposition, x
) -> np.ndarray:
    """Orbit-averaged chordal coordinates for the representative's CDS."""
    total = np.zeros(poly.n)
    for image, weight in orbit_with_multiplicity(representative):
        total += float(weight) * chordal_coords(poly, image, x)
    return finalize_coords(total)
