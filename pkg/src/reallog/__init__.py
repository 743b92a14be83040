"""reallog: real matrix logarithms, the K/K* membership classes, and the
classification of their bijective linear preservers.

K collects the real matrices with a principal logarithm (spectrum off the
closed negative real axis); K* collects those with any real logarithm
(invertible, with even Jordan block counts at negative eigenvalues).  The
preserver analysis recovers, for any bijective linear map on matrix space
that preserves either class, its standard form c P A P^{-1} or
c P A^T P^{-1}, and otherwise exhibits a witness matrix.
"""

from . import backend
from .errors import (
    ConvergenceFailure,
    DegenerateAngle,
    DegenerateRecovery,
    DimensionMismatch,
    LengthMismatch,
    NegativeAxisEigenvalue,
    NonpositiveDeterminant,
    NotAnEigenvalue,
    NotInK,
    NotInKStar,
    NotScalarImage,
    Overflow,
    ReallogError,
    SampleBudgetExceeded,
    SingularMap,
    SingularMatrix,
    UnsupportedJordanStructure,
)
from .gadgets import (
    TwoByTwoAnalysis,
    analyze_two_by_two,
    discriminant_max_check,
    embedded_witness,
    product_B_theta,
    rotation,
    shear_A_theta,
    zariski_density_witness,
)
from .linalg import (
    DEFAULT_TOL,
    SchurForm,
    Spectrum,
    Tolerances,
    eigenvalues,
    invert,
    matching_distance,
    numerical_rank,
    real_schur,
)
from .matfuncs import (
    LogKind,
    LogResult,
    expm,
    logm_principal,
    real_log_paired,
    sqrtm_real,
)
from .membership import (
    EigClass,
    JordanProfile,
    MembershipVerdict,
    Tag,
    approximate_from_K,
    classify_spectrum,
    in_closure,
    in_K,
    in_K_star,
    jordan_profile,
    openness_radius,
)
from .preserver import (
    AnalysisResult,
    Verdict,
    Witness,
    analyze,
    check_gl_preservation,
    classify_homomorphism,
    falsify_preservation,
    recover_conjugator,
    recover_scale,
)
from .spacemaps import (
    MatrixSpaceMap,
    StandardForm,
    apply,
    compose,
    from_standard,
    from_two_sided,
    identity_map,
    inverse,
    make_standard_form,
    transpose_map,
    unvec,
    vec,
)

__version__ = "0.1.0"

#: Kernel lane selected at import ("compiled" or "pure").
KERNEL_BACKEND = backend.active_name()
