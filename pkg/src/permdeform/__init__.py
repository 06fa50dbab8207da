"""Exact verification of PBW deformations of S(V) # S_n.

The symmetric group S_n acts on V = k^n by permuting coordinates.  This
package constructs candidate deformation parameters (linear and constant
2-cochains), checks the PBW gauge conditions symbolically over exact
rationals, computes the relevant Hochschild cohomology spaces, and
cross-checks everything against a Bergman-diamond-lemma rewriting oracle.
"""
from .cochains import (
    ThreeCochain,
    TwoCochain,
    kappa_C_penta,
    kappa_C_tri,
    kappa_L1,
    kappa_L_tri,
)
from .cohomology import class_dims
from .obstructions import case_tables, check_conditions, classify, phi, psi
from .perms import Perm, centralizer, conjugacy_classes, conjugate, parse_perm
from .render import MapSpec, parse_subst, presentation_lines
from .rewriting import RewriteSystem, check_overlaps, dimension_census, normal_form

__version__ = "0.1.0"

__all__ = [
    "Perm",
    "parse_perm",
    "conjugate",
    "conjugacy_classes",
    "centralizer",
    "TwoCochain",
    "ThreeCochain",
    "kappa_L1",
    "kappa_L_tri",
    "kappa_C_tri",
    "kappa_C_penta",
    "check_conditions",
    "classify",
    "phi",
    "psi",
    "case_tables",
    "class_dims",
    "RewriteSystem",
    "check_overlaps",
    "normal_form",
    "dimension_census",
    "MapSpec",
    "parse_subst",
    "presentation_lines",
    "__version__",
]
