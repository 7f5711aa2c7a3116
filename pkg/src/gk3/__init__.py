"""Exact arithmetic in the Mukai lattice of a K3 surface.

Generalized Calabi-Yau classes over Q(sqrt d), B-field transforms,
generalized Neron-Severi and transcendental lattices, rigidity
classifiers, and lattice-level mirror constructions, all in exact
integer and rational arithmetic.
"""

from .errors import SchemaError, ValidationError
from .scalars import (
    ComplexQuad,
    QuadScalar,
    as_complex,
    as_quad,
    check_field_tag,
    field_tag_of,
    is_squarefree,
)
from .intlinalg import (
    SymDiagResult,
    det,
    hnf,
    hnf_basis,
    int_kernel,
    saturate,
    snf_divisors,
    sym_signature,
)
from .lattices import (
    HyperbolicSplit,
    IntegralLattice,
    MatchResult,
    ReducedForm,
    SplitNotFound,
    Sublattice,
    diag_lattice,
    direct_sum,
    discriminant,
    e8_minus,
    enumerate_reduced_forms,
    find_hyperbolic_split,
    gauss_reduce2,
    hyperbolic_plane,
    invariants_match,
    is_primitive,
    k3_lattice,
    named_lattice,
    ortho_complement,
    rescale,
    saturation,
)
from .mukai import (
    MUKAI,
    CohClass,
    GCYClass,
    GenericClass,
    PeriodPlane,
    bfield_matrix,
    bfield_transform,
    check_gcy,
    coh_class,
    decompose_type_a,
    deg2_vector,
    exponential_class,
    member_support,
    mukai_pairing,
    period_plane,
    support_lattice,
    two_form_class,
)
from .pairs import (
    GeneralizedK3,
    HKClassification,
    PiSpace,
    SignatureProfile,
    classify_hk_pair,
    cross_pairings,
    neron_severi,
    ns_and_transcendental,
    signature_profile,
    transcendental,
    transform_pair,
    validate_gk3,
)
from .rigidity import (
    RigidityReport,
    SurveyConfig,
    SurveyReport,
    is_complex_rigid,
    is_kahler_rigid,
    kahler_rigid_survey,
)
from .mirror import (
    DolgachevMirror,
    Failure,
    FamilySpec,
    MirrorReport,
    PolarizationData,
    PolarizationReport,
    build_si_mirror,
    check_polarization,
    dolgachev_mirror,
    mirror_check,
    moduli_dims,
)

__all__ = [
    "SchemaError",
    "ValidationError",
    "ComplexQuad",
    "QuadScalar",
    "as_complex",
    "as_quad",
    "check_field_tag",
    "field_tag_of",
    "is_squarefree",
    "SymDiagResult",
    "det",
    "hnf",
    "hnf_basis",
    "int_kernel",
    "saturate",
    "snf_divisors",
    "sym_signature",
    "HyperbolicSplit",
    "IntegralLattice",
    "MatchResult",
    "ReducedForm",
    "SplitNotFound",
    "Sublattice",
    "diag_lattice",
    "direct_sum",
    "discriminant",
    "e8_minus",
    "enumerate_reduced_forms",
    "find_hyperbolic_split",
    "gauss_reduce2",
    "hyperbolic_plane",
    "invariants_match",
    "is_primitive",
    "k3_lattice",
    "named_lattice",
    "ortho_complement",
    "rescale",
    "saturation",
    "MUKAI",
    "CohClass",
    "GCYClass",
    "GenericClass",
    "PeriodPlane",
    "bfield_matrix",
    "bfield_transform",
    "check_gcy",
    "coh_class",
    "decompose_type_a",
    "deg2_vector",
    "exponential_class",
    "member_support",
    "mukai_pairing",
    "period_plane",
    "support_lattice",
    "two_form_class",
    "GeneralizedK3",
    "HKClassification",
    "PiSpace",
    "SignatureProfile",
    "classify_hk_pair",
    "cross_pairings",
    "neron_severi",
    "ns_and_transcendental",
    "signature_profile",
    "transcendental",
    "transform_pair",
    "validate_gk3",
    "RigidityReport",
    "SurveyConfig",
    "SurveyReport",
    "is_complex_rigid",
    "is_kahler_rigid",
    "kahler_rigid_survey",
    "DolgachevMirror",
    "Failure",
    "FamilySpec",
    "MirrorReport",
    "PolarizationData",
    "PolarizationReport",
    "build_si_mirror",
    "check_polarization",
    "dolgachev_mirror",
    "mirror_check",
    "moduli_dims",
]

__version__ = "0.1.0"
