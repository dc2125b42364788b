"""Exact verification of Ehrhart-type reciprocity for half-open polytopes and cones."""
from .complex import (
    PolyhedralComplex,
    boundary_complex,
    classify_faces,
    closed_star,
    cone_section_complex,
    generated_by,
    link,
    link_dim,
    polytope_complex,
    subcomplex_generated,
)
from .ehrhart import (
    EhrhartPolynomial,
    HalfOpenRegion,
    count_points,
    count_relint,
    ehrhart_polynomial,
    half_open_count_ie,
    relint_count_ie,
    verify_reciprocity,
)
from .exact_math import InputError, Rational, interpolate_polynomial, smith_normal_form
from .geometry import Cone, Face, Polytope, bright_side, face_lattice, homogenize, tangent_cone, \
    vertex_cone
from .genfun import (
    HalfOpenSimplicialCone,
    LaurentPolynomial,
    PoleError,
    RationalGenFun,
    eval_rational,
    genfun_cone,
    genfun_region,
    rational_equal,
    substitute_reciprocal,
    triangulate_and_halfopen,
)
from .identities import (
    check_indicator_identity,
    verify_genF,
    verify_mr1,
    verify_relative_brion,
    verify_stanley_reciprocity,
)
from .topology import CM, HomologyProfile, cm_status, complex_homology, \
    homology_manifold_status, reduced_euler_char, reduced_homology

__all__ = [name for name in dir() if not name.startswith("_")]
