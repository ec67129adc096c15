"""Exact toolkit for satellites of spherical subgroups.

Computes, in exact integer and rational arithmetic, the combinatorial
invariants attached to a spherical subgroup and its satellites: the
homogeneous spherical datum and its satellite and closed-orbit
transforms, the face lattice of the cosimplicial valuation cone, flag
variety virtual Poincare polynomials by two cross-validating formulas,
satellite polynomial ratios, and truncated-series isotropy witnesses with
their limits.  A shipped catalog of rank-one spaces and worked families
feeds the ``verify`` suites.
"""

from .exactpoly import (
    LaurentPoly,
    NotASquare,
    NotDivisible,
    PolyParseError,
    ToolkitError,
    TruncSeries,
    expand_inverse_t_minus_1,
    exact_div,
    format_poly,
    parse_poly,
    series_sqrt,
)
from .latcone import (
    ConeFace,
    DimensionMismatch,
    KappaFunctional,
    NotInCone,
    NotWonderful,
    PairedLattice,
    ValuationCone,
    contains,
    enumerate_faces,
    i_of_v,
    relint_lattice_points,
)
from .poincare import (
    MissingData,
    NotPolynomialInInverse,
    PoincareRecord,
    SatelliteFamily,
    brion_peyre_q,
    check_degree_laws,
    horospherical_factor,
    ratio_r,
    wonderful_sum,
)
from .rootsys import (
    InternalDivisibility,
    LeviSubset,
    RootSystem,
    UnsupportedType,
    flag_poincare_degrees,
    flag_poincare_heights,
    height,
    parse_root_system,
    positive_roots,
)
from .sphdata import (
    BadSubset,
    Color,
    ColorMatrix,
    DegenerateCone,
    InconsistentColor,
    SphericalDatum,
    SphericalRoot,
    classify_color,
    closed_orbit_datum,
    compute_s_p,
    count_satellites,
    satellite_datum,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "TruncSeries",
    "ToolkitError",
    "NotDivisible",
    "NotASquare",
    "PolyParseError",
    "exact_div",
    "expand_inverse_t_minus_1",
    "series_sqrt",
    "format_poly",
    "parse_poly",
    "RootSystem",
    "LeviSubset",
    "UnsupportedType",
    "InternalDivisibility",
    "positive_roots",
    "height",
    "flag_poincare_heights",
    "flag_poincare_degrees",
    "parse_root_system",
    "PairedLattice",
    "ValuationCone",
    "ConeFace",
    "KappaFunctional",
    "DimensionMismatch",
    "NotInCone",
    "NotWonderful",
    "contains",
    "i_of_v",
    "enumerate_faces",
    "relint_lattice_points",
    "SphericalDatum",
    "SphericalRoot",
    "Color",
    "ColorMatrix",
    "InconsistentColor",
    "BadSubset",
    "DegenerateCone",
    "classify_color",
    "compute_s_p",
    "satellite_datum",
    "closed_orbit_datum",
    "count_satellites",
    "PoincareRecord",
    "SatelliteFamily",
    "MissingData",
    "NotPolynomialInInverse",
    "ratio_r",
    "wonderful_sum",
    "brion_peyre_q",
    "check_degree_laws",
    "horospherical_factor",
    "__version__",
]
