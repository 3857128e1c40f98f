"""Exact computations on graded upper-triangular matrix algebras with a star map.

The package builds the algebras, decides their polynomial identities with
exact witnesses, tabulates codimensions against closed forms, and computes
images of multilinear polynomials, certifying non-membership with Groebner
bases that re-verify independently.  All arithmetic is rational and exact;
randomness only searches, it never decides.
"""

from .algebra import (
    COMPONENT_TAGS,
    KINDS,
    ComponentTag,
    StarAlgebraSpec,
    apply_star,
    build_algebra,
    homogeneous_degree,
    random_element,
    random_homogeneous,
    spec_from_json,
    spec_to_json,
)
from .certificates import CertificateCheck, verify_certificate
from .codim import (
    CodimReport,
    closed_form_case_sums_ut4,
    closed_form_codim_ut4,
    codim_total,
)
from .freepoly import (
    StarPoly,
    VarSymbol,
    commutator,
    parse_schema,
    parse_star_poly,
)
from .groebner import GroebnerBasis, SolverIncomplete, groebner_basis
from .identities import (
    IdentityVerdict,
    canonical_coefficients,
    generic_evaluation,
    is_identity,
    substitute,
)
from .images import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    Certificate,
    ImageReport,
    MembershipDecision,
    StructureLemmaReport,
    Ut3ImageClass,
    classify_image_ut3,
    classify_image_ut3_odd,
    counterexample_utn,
    membership_decide,
    membership_search,
    sample_image,
    vector_space_probe,
    verify_structure_lemmas,
)
from .linalg import linear_solve
from .matrices import Mat, format_mat, mat_sum, parse_mat_expr
from .poly import ParamId, Poly, parse_poly
from .suites import SuiteReport, available_suites, load_catalog, run_suite

__all__ = [
    "COMPONENT_TAGS",
    "KINDS",
    "ComponentTag",
    "StarAlgebraSpec",
    "apply_star",
    "build_algebra",
    "homogeneous_degree",
    "random_element",
    "random_homogeneous",
    "spec_from_json",
    "spec_to_json",
    "CertificateCheck",
    "verify_certificate",
    "CodimReport",
    "closed_form_case_sums_ut4",
    "closed_form_codim_ut4",
    "codim_total",
    "StarPoly",
    "VarSymbol",
    "commutator",
    "parse_schema",
    "parse_star_poly",
    "GroebnerBasis",
    "SolverIncomplete",
    "groebner_basis",
    "IdentityVerdict",
    "canonical_coefficients",
    "generic_evaluation",
    "is_identity",
    "substitute",
    "DEFAULT_SEED",
    "DEFAULT_TRIALS",
    "Certificate",
    "ImageReport",
    "MembershipDecision",
    "StructureLemmaReport",
    "Ut3ImageClass",
    "classify_image_ut3",
    "classify_image_ut3_odd",
    "counterexample_utn",
    "membership_decide",
    "membership_search",
    "sample_image",
    "vector_space_probe",
    "verify_structure_lemmas",
    "linear_solve",
    "Mat",
    "format_mat",
    "mat_sum",
    "parse_mat_expr",
    "ParamId",
    "Poly",
    "parse_poly",
    "SuiteReport",
    "available_suites",
    "load_catalog",
    "run_suite",
]
