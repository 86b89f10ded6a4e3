"""Composition operators with affine symbols on the Fock space.

The package studies C_phi f = f o phi for phi(z) = Az + B acting on the
Fock space over C^n with Gaussian weight exp(-|z|^2 / 2).  Closed-form
criteria (boundedness, compactness, norms, normality, Schatten class
membership, spectrum, cyclicity) live in :mod:`fockop.analysis`,
:mod:`fockop.spectrum` and :mod:`fockop.dynamics`; every one of them can
be cross-checked against exact finite truncations from
:mod:`fockop.truncation`.
"""

__version__ = "0.1.0"

from .errors import (
    AdjointNotGradedError,
    FockopError,
    ForwardOrbitUnsupportedError,
    IdentityViolationError,
    InconsistentError,
    NonFiniteEntryError,
    NonSquareError,
    NormExceedsOneError,
    NotBoundedError,
    NotCompactError,
    NotDiagonalizableError,
    ParseError,
    QuadratureDivergenceError,
    ShapeMismatchError,
    SizeOverflowError,
    StructureViolationError,
)
from .exact import GaussianRational
from .polynomials import MultiPolynomial, graded_dim, graded_indices
from .symbol import (
    ALPHA,
    AffineSymbol,
    BlockSchurForm,
    SvdForm,
    adjoint_symbol,
    block_schur_form,
    block_schur_of_symbol,
    compose_symbols,
    fixed_point,
    iterate_symbol,
    svd_normalize,
)
from .analysis import (
    BoundednessVerdict,
    ClassificationReport,
    KernelFunction,
    berezin_transform,
    berezin_transform_quadrature,
    check_bounded,
    check_compact,
    check_essentially_normal,
    check_hyponormal,
    check_normal,
    classify,
    essential_norm,
    hilbert_schmidt_norm_sq,
    hilbert_schmidt_norm_sq_closed_form,
    operator_norm,
    schatten_integrals,
    schatten_membership,
    solve_z0,
)
from .spectrum import (
    EigenfunctionSpec,
    SpectrumEnumeration,
    construct_eigenfunction,
    eigenvalue_products,
    eigenvalues,
    enumerate_spectrum,
    multiset_distance,
    verify_eigenfunction,
)
from .dynamics import (
    AngleSet,
    CyclicityVerdict,
    IndependenceVerdict,
    check_cyclic,
    check_supercyclic,
    kernel_orbit,
    orbit_density_experiment,
    rational_independence,
)
from .truncation import (
    GradedBasis,
    TruncatedOperator,
    build_adjoint_truncation,
    build_basis,
    build_truncation,
    dump_binary,
    dump_csv,
    exact_matrix_as_double,
    kernel_series_polynomial,
    load_binary,
    truncated_commutator_norm,
    truncated_norm,
    truncated_singular_values,
    truncated_spectrum,
)

__all__ = [
    "ALPHA",
    "__version__",
    "AffineSymbol",
    "AngleSet",
    "BlockSchurForm",
    "BoundednessVerdict",
    "ClassificationReport",
    "CyclicityVerdict",
    "EigenfunctionSpec",
    "GaussianRational",
    "GradedBasis",
    "IndependenceVerdict",
    "KernelFunction",
    "MultiPolynomial",
    "SpectrumEnumeration",
    "SvdForm",
    "TruncatedOperator",
    "adjoint_symbol",
    "berezin_transform",
    "berezin_transform_quadrature",
    "block_schur_form",
    "block_schur_of_symbol",
    "build_adjoint_truncation",
    "build_basis",
    "build_truncation",
    "check_bounded",
    "check_compact",
    "check_cyclic",
    "check_essentially_normal",
    "check_hyponormal",
    "check_normal",
    "check_supercyclic",
    "classify",
    "compose_symbols",
    "construct_eigenfunction",
    "dump_binary",
    "dump_csv",
    "eigenvalue_products",
    "eigenvalues",
    "enumerate_spectrum",
    "essential_norm",
    "exact_matrix_as_double",
    "fixed_point",
    "graded_dim",
    "graded_indices",
    "hilbert_schmidt_norm_sq",
    "hilbert_schmidt_norm_sq_closed_form",
    "iterate_symbol",
    "kernel_orbit",
    "kernel_series_polynomial",
    "load_binary",
    "multiset_distance",
    "operator_norm",
    "orbit_density_experiment",
    "rational_independence",
    "schatten_integrals",
    "schatten_membership",
    "solve_z0",
    "svd_normalize",
    "truncated_commutator_norm",
    "truncated_norm",
    "truncated_singular_values",
    "truncated_spectrum",
    "verify_eigenfunction",
    # errors
    "AdjointNotGradedError",
    "FockopError",
    "ForwardOrbitUnsupportedError",
    "IdentityViolationError",
    "InconsistentError",
    "NonFiniteEntryError",
    "NonSquareError",
    "NormExceedsOneError",
    "NotBoundedError",
    "NotCompactError",
    "NotDiagonalizableError",
    "ParseError",
    "QuadratureDivergenceError",
    "ShapeMismatchError",
    "SizeOverflowError",
    "StructureViolationError",
]
