"""Exact computations with polyhedral divisors on the affine and projective line.

Normalization of finitely generated multigraded algebras, integral closure
of homogeneous ideals through their Rees algebras, and normality tests.
"""

from .curve import AFFINE, INF, PROJECTIVE, QDivisor, RationalFunction, SectionSpace, global_sections
from .divisor import (
    HomogeneousElement,
    MultigradedAlgebra,
    PolyhedralDivisor,
    ProperCertificate,
    contains_element,
    evaluate,
    graded_piece,
    is_elliptic,
    is_proper,
)
from .ideals import (
    HomogeneousIdeal,
    ReesData,
    closure_generators,
    closure_graded_piece,
    ideal_closure,
    monomial_closure,
    newton_polyhedron,
    rees_weight_cone,
    verify_correspondence,
)
from .lattice import (
    efold_sum_membership,
    hilbert_basis,
    is_normal_polyhedron,
    module_generators,
    saturate_semigroup,
)
from .normality import normality_certificate, p_tilde, power_closure_equal, rrv_check
from .normalization import (
    AlgebraPresentation,
    dpd_presentation,
    normalize,
    verify_normalization,
    weight_cone,
)
from .polyhedral import (
    Cone,
    SigmaPolyhedron,
    dd_convert,
    dilate,
    dual_cone,
    minkowski_sum,
    polyhedra_equal,
    polyhedron_from_inequalities,
    support_function,
)

__version__ = "0.1.0"
