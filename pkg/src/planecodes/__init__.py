"""Exact finite-geometry toolkit for subspace codes built from plane quadrics.

The package constructs, for any small prime power q, a set of planes of
PG(5, q) that pairwise meet in at most one point (a constant-dimension
subspace code with parameters (6, M, 4; 3)_q), verifies its parameters with
two independent methods, and searches for extensions.  All arithmetic is
exact, over GF(p^k) with canonical integer encodings.
"""

from planecodes.galois import GF, Tower, field_make, tower
from planecodes.projgeom import Subspace, normalize
from planecodes.quadrics import PlaneQuadric, QuadricKind, census, classify, cubic_value
from planecodes.groups import GroupElement, LiftedElement, lift, pgl_generators, singer
from planecodes.construction import Bundle, Code, CodePlane, Solid, build_code, circumscribed_bundle
from planecodes.verify import (
    completeness_check,
    parameter_report,
    subspace_distance,
    verify_line_index,
    verify_naive,
)

__all__ = [
    "GF",
    "Tower",
    "field_make",
    "tower",
    "Subspace",
    "normalize",
    "PlaneQuadric",
    "QuadricKind",
    "census",
    "classify",
    "cubic_value",
    "GroupElement",
    "LiftedElement",
    "lift",
    "pgl_generators",
    "singer",
    "Bundle",
    "Code",
    "CodePlane",
    "Solid",
    "build_code",
    "circumscribed_bundle",
    "completeness_check",
    "parameter_report",
    "subspace_distance",
    "verify_line_index",
    "verify_naive",
]

__version__ = "0.1.0"
