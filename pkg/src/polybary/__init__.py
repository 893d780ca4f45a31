"""Barycentric coordinate systems on convex polygons.

Wachspress, maximum-entropy (Gibbs), chordal, and cartographic
coordinates, with triangulation enumeration, dihedral symmetrization,
discrepancy fields, and grid export.
"""

from .chordal import (
    ChordalDecomposition,
    build_parsing_tree,
    cartographic_coords,
    cds,
    chordal_coords,
    dihedral_apply,
    enumerate_decompositions,
    locate_region,
    orbit_with_multiplicity,
    region_codes,
)
from .geometry import (
    Polygon,
    areal_coords,
    locate,
    signed_area,
    simplex_volumetric_coords,
    validate_polygon,
)
from .gibbs import entropy, gibbs_coords, gibbs_distribution, log_partition, solve_gibbs
from .systems import (
    ArealSystem,
    CartographicSystem,
    ChordalSystem,
    CoordinateSystem,
    GibbsSystem,
    MixtureSystem,
    WachspressSystem,
    convex_combine,
    discrepancy,
    discrepancy_grid,
    equator_b,
    evaluate,
)
from .wachspress import wachspress_coords

__all__ = [
    "ArealSystem",
    "CartographicSystem",
    "ChordalDecomposition",
    "ChordalSystem",
    "CoordinateSystem",
    "GibbsSystem",
    "MixtureSystem",
    "Polygon",
    "WachspressSystem",
    "areal_coords",
    "build_parsing_tree",
    "cartographic_coords",
    "cds",
    "chordal_coords",
    "convex_combine",
    "dihedral_apply",
    "discrepancy",
    "discrepancy_grid",
    "entropy",
    "enumerate_decompositions",
    "equator_b",
    "evaluate",
    "gibbs_coords",
    "gibbs_distribution",
    "locate",
    "locate_region",
    "log_partition",
    "orbit_with_multiplicity",
    "region_codes",
    "signed_area",
    "simplex_volumetric_coords",
    "solve_gibbs",
    "validate_polygon",
    "wachspress_coords",
]

__version__ = "0.1.0"
