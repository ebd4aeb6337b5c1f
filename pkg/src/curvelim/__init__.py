"""Elimination theory for pairs of polynomials, on the line and along plane curves.

The library works with exact rational arithmetic by default (numpy object
arrays of ``Fraction``) and with complex floating point on request.
"""

from .classical import bezout, kravitsky_check, line_image_pencil, resultant, sylvester
from .curve import (
    blown_bezout,
    count_common_zeros_bezout,
    count_common_zeros_sylvester,
    curve_vandermonde,
    generalized_kravitsky_check,
    generalized_shift,
    generalized_sylvester,
    hom_bezout_decomposition,
    pairing,
    principal_subspace,
    restricted_bezout,
)
from .detrep import DetRep, det_poly, kernel_at, sample_points, transform
from .poly import AffinePoly2, HomPoly3, MonomialOrder, UniPoly, parse_poly
from .ratmap import RationalMap, compose_check, image_pencil, verify_image

__version__ = "0.1.0"

__all__ = [
    "AffinePoly2",
    "DetRep",
    "HomPoly3",
    "MonomialOrder",
    "RationalMap",
    "UniPoly",
    "bezout",
    "blown_bezout",
    "compose_check",
    "count_common_zeros_bezout",
    "count_common_zeros_sylvester",
    "curve_vandermonde",
    "det_poly",
    "generalized_kravitsky_check",
    "generalized_shift",
    "generalized_sylvester",
    "hom_bezout_decomposition",
    "image_pencil",
    "kernel_at",
    "kravitsky_check",
    "line_image_pencil",
    "pairing",
    "parse_poly",
    "principal_subspace",
    "restricted_bezout",
    "resultant",
    "sample_points",
    "sylvester",
    "transform",
    "verify_image",
]
