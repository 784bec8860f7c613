"""Exact Lie algebra cohomology for symmetric pairs.

Computes Chevalley-Eilenberg cohomology of finite-dimensional real Lie
algebras over exact rational arithmetic, including the relative complex of a
pair (g, k), the compact-dual transport of relative cochains, Chern-Weil
forms of invariant polynomials against the curvature of the canonical
symmetric-space connection, and assembled descriptions of H^n(G; U(1)) for
the built-in classical groups.  The ``symcoh`` command line fronts all of it.
"""

from .errors import (
    AlgebraMismatch,
    BracketViolation,
    DegreeZero,
    DimensionMismatch,
    JacobiViolation,
    NczFailed,
    NonTrivialCoefficients,
    NotAMorphism,
    NotARepresentation,
    NotASubalgebra,
    NotComplementary,
    NotHorizontal,
    NotInvariant,
    NotSemisimple,
    SizeLimit,
    SymcohError,
    UnknownAlgebra,
    UnknownGroup,
    UsageError,
    ValidationFailure,
)
from .scalars import GaussianRational, format_rational, rat
from .matrices import Matrix, SpanSolver, kernel_basis, rank, solve_in_span
from .liealg import (
    CartanDecomposition,
    CoefficientModule,
    LieAlgebra,
    algebra_from_json,
    algebra_to_json,
    compact_dual,
    decomposition_from_json,
    dual_pair,
    is_negative_definite,
    is_positive_definite,
    is_semisimple,
    killing_form,
    module_from_json,
    module_from_matrices,
    new_lie_algebra,
    restricted_form,
    subalgebra_check,
    trivial_module,
    validate_decomposition,
)
from .cecohomology import (
    DEFAULT_MAX_EXTERIOR_DIM,
    Cochain,
    CohomologyResult,
    ComparisonMap,
    NczReport,
    ce_differential,
    cochain,
    cohomology,
    cup_product,
    d_apply,
    full_complex,
    insertion,
    is_ncz,
    lie_derivative,
    odd_generation_check,
    relative_complex,
    relative_to_absolute_map,
    transport_to_dual,
)
from .catalog import (
    CompactModel,
    GradedRingPresentation,
    GroupSpec,
    Monomial,
    builtin_group,
    builtin_group_names,
    compact_model,
    compact_model_names,
    custom_group,
    exterior_betti,
    k_cohomology_crosscheck,
    model_inclusion,
    monomial_basis,
)
from .chernweil import (
    EpsilonData,
    InvariantPolynomial,
    constant_form,
    curvature,
    cw,
    epsilon_rank,
    generators_by_name,
    invariance_check,
    invariant_generators,
    pfaffian_form,
    poly_product,
    restrict_polynomial,
    trace_form,
)
from .reports import (
    DegreeLine,
    GroupCohomologyReport,
    assemble_split,
    build_report,
    epsilon_doc,
    full_report,
    les_report,
    render_text,
    report_document,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # errors
    "SymcohError", "ValidationFailure", "JacobiViolation", "BracketViolation",
    "NotARepresentation", "NotASubalgebra", "NotComplementary", "NotHorizontal",
    "NotSemisimple", "NotInvariant", "NonTrivialCoefficients", "NotAMorphism",
    "DimensionMismatch", "DegreeZero", "SizeLimit", "NczFailed", "UnknownGroup",
    "UnknownAlgebra", "AlgebraMismatch", "UsageError",
    # scalars and matrices
    "GaussianRational", "rat", "format_rational",
    "Matrix", "SpanSolver", "rank", "kernel_basis", "solve_in_span",
    # algebras and pairs
    "LieAlgebra", "new_lie_algebra", "CoefficientModule", "trivial_module",
    "module_from_matrices", "CartanDecomposition", "validate_decomposition",
    "subalgebra_check", "killing_form", "restricted_form", "is_semisimple",
    "is_negative_definite", "is_positive_definite", "compact_dual", "dual_pair",
    "algebra_to_json", "algebra_from_json", "decomposition_from_json",
    "module_from_json",
    # cohomology engine
    "DEFAULT_MAX_EXTERIOR_DIM", "Cochain", "cochain", "d_apply",
    "ce_differential", "insertion", "lie_derivative", "cup_product",
    "full_complex", "relative_complex", "cohomology", "CohomologyResult",
    "ComparisonMap", "relative_to_absolute_map", "transport_to_dual",
    "NczReport", "is_ncz", "odd_generation_check",
    # catalog
    "builtin_group", "builtin_group_names", "custom_group", "GroupSpec",
    "CompactModel", "compact_model", "compact_model_names", "model_inclusion",
    "GradedRingPresentation", "Monomial", "monomial_basis", "exterior_betti",
    "k_cohomology_crosscheck",
    # invariant forms and characteristic classes
    "InvariantPolynomial", "invariance_check", "constant_form", "trace_form",
    "pfaffian_form", "invariant_generators", "generators_by_name",
    "poly_product", "curvature", "cw", "restrict_polynomial", "EpsilonData",
    "epsilon_rank",
    # reports
    "GroupCohomologyReport", "DegreeLine", "assemble_split", "les_report",
    "build_report", "full_report", "report_document", "epsilon_doc", "render_text",
]
