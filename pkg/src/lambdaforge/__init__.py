"""lambda-forge: exact arithmetic for truncated power series rings,
Adams operation certification, automorphism lifting, and genus invariants."""

from .coefficients import INTEGERS, KO_EVEN, Integers, IntegersMod, KOElement, KOEven, PrimeField
from .errors import (
    BudgetExceeded,
    DivisibilityFailure,
    FilteredMapError,
    InputError,
    InvalidTransport,
    LambdaForgeError,
    LevelTooLow,
    MalformedStructure,
    MissingEntry,
    ParseError,
    PresentationMismatch,
    RelationViolation,
    ShapeError,
    TorsionCoefficients,
    Unsatisfiable,
    UnsupportedRelation,
)
from .series import (
    FilteredMap,
    Generator,
    Relation,
    RingPresentation,
    TruncatedSeries,
    filtration_of,
    reduce_truncation,
    substitute,
)
from .parsing import format_series, parse_series
from .newton import (
    AdamsFamily,
    LambdaFamily,
    adams_from_lambda,
    lambda_from_adams,
    line_element_family,
    psi_from_lambda,
)
from .axioms import Certificate, certify, check_commutation, check_frobenius, check_identity
from .lifting import (
    AutomorphismCertificate,
    CorrectionData,
    LiftResult,
    certify_automorphism,
    correct_lift,
    exact_filtration_exponents,
    invert_map,
    lift_automorphism,
    random_automorphism,
    tower_surjectivity,
)
from .towers import (
    FiniteGroup,
    FiniteGroupTower,
    Homomorphism,
    OrbitReport,
    aut_group_of_truncation,
    aut_tower,
    cyclic_group,
    lim1_orbits,
    surjectivity_verdict,
    symmetric_group,
)
from .graded import (
    GradedPresentation,
    graded_tower_verdict,
    lift_graded_automorphism,
    random_graded_automorphism,
    truncate_graded,
)
from .genus import (
    KModelStructure,
    KOModelStructure,
    RectorProfile,
    a_invariant,
    canonicalize_a,
    chebyshev_image,
    chebyshev_structure,
    combined_profile,
    conjugate_structure,
    construct_structure,
    find_intertwiner,
    flip_orientation,
    k_model_presentation,
    ko_model_from_a,
    ko_presentation,
    odd_sign,
    profile_of_k_model,
    profile_of_ko_model,
    signs_from_a,
    transport_a,
)

__version__ = "0.1.0"
