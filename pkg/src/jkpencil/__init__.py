"""Exact Jordan-Kronecker analysis of skew-symmetric and Poisson pencils.

All arithmetic is over Q (fractions.Fraction); non-rational eigenvalues
are represented by irreducible factors of polynomials over Q.
"""

from .errors import (
    DegreeJumpError,
    DenominatorVanishesError,
    InfiniteEigenvalueError,
    InternalConsistencyError,
    JKPencilError,
    NonGenericPointError,
    PairingViolationError,
    SingularMatrixError,
    ValidationError,
)
from .linalg import (
    Matrix,
    Subspace,
    Vector,
    kernel_basis,
    rank,
    subspace_sum,
)
from .multipoly import MultiPoly, multi_gcd
from .pencil import (
    INFINITY,
    pfaffian,
    CharPoly,
    JKInvariants,
    JordanGroup,
    SkewPencil,
    canonical_pencil,
    characteristic_polynomial,
    congruence_transform,
    core_subspace,
    is_regular_value,
    isotropy_certificate,
    jk_invariants,
    pencil_rank,
    random_unimodular,
    recursion_charpoly_check,
)
from .poisson import (
    COMPLETE,
    INCOMPLETE,
    INDETERMINATE,
    CompletenessReport,
    GenericCharPoly,
    PointAnalysis,
    PolyPoissonPencil,
    coefficient_gradients,
    compatibility_check,
    completeness_check,
    eigenvalue_lemma_check,
    evaluate_at,
    extended_core,
    generic_char_poly,
    involution_check,
    jacobi_check,
    sample_generic_point,
)
from .liealg import (
    LieAlgebra,
    LiePencilSpec,
    catalog,
    catalog_names,
    fa_completeness,
    ftilde_completeness,
    fundamental_semiinvariant,
    get_algebra,
    jk_invariants_generic,
    lie_pencil,
    validate_lie_algebra,
)
from .smith import smith_normal_form
from .unipoly import UniPoly, poly_gcd, rational_roots, squarefree_decompose

__version__ = "0.1.0"

from .linalg import fraction_free_rank as rank_over_fractions  # spec name

__all__ = [
    "CharPoly",
    "COMPLETE",
    "CompletenessReport",
    "DegreeJumpError",
    "DenominatorVanishesError",
    "GenericCharPoly",
    "INCOMPLETE",
    "INDETERMINATE",
    "INFINITY",
    "InfiniteEigenvalueError",
    "InternalConsistencyError",
    "JKInvariants",
    "JKPencilError",
    "JordanGroup",
    "LieAlgebra",
    "LiePencilSpec",
    "Matrix",
    "MultiPoly",
    "NonGenericPointError",
    "PairingViolationError",
    "PointAnalysis",
    "PolyPoissonPencil",
    "SingularMatrixError",
    "SkewPencil",
    "Subspace",
    "UniPoly",
    "ValidationError",
    "Vector",
    "canonical_pencil",
    "catalog",
    "catalog_names",
    "characteristic_polynomial",
    "coefficient_gradients",
    "compatibility_check",
    "completeness_check",
    "congruence_transform",
    "core_subspace",
    "eigenvalue_lemma_check",
    "evaluate_at",
    "extended_core",
    "fa_completeness",
    "ftilde_completeness",
    "fundamental_semiinvariant",
    "generic_char_poly",
    "get_algebra",
    "involution_check",
    "is_regular_value",
    "isotropy_certificate",
    "jacobi_check",
    "jk_invariants",
    "jk_invariants_generic",
    "kernel_basis",
    "lie_pencil",
    "multi_gcd",
    "pencil_rank",
    "pfaffian",
    "poly_gcd",
    "random_unimodular",
    "rank",
    "rank_over_fractions",
    "rational_roots",
    "recursion_charpoly_check",
    "sample_generic_point",
    "smith_normal_form",
    "squarefree_decompose",
    "subspace_sum",
    "validate_lie_algebra",
]
