"""Numerical ranges, Kippenhahn curves and Gau--Wu numbers of complex matrices."""

from .basepoly import (
    BasePolynomial,
    PolynomialError,
    compute_base_polynomial,
    equal_up_to_tol,
    evaluate,
    format_polynomial,
    order_at_point,
    restrict_to_angle,
    rotate,
    verify_factorization,
)
from .config import RunConfig
from .gauwu import (
    GauWuError,
    GauWuResult,
    analyze,
    check_witnesses,
    classify,
    theorem_bounds,
    toeplitz_k,
    witness_lower_bound,
)
from .geometry import (
    GeometryError,
    boundary_distance,
    boundary_points,
    collinear_groups,
    curve_points,
    detect_seeds,
    real_singularities,
)
from .matrix import (
    HermitianPencil,
    MatrixFormatError,
    as_matrix,
    commutant_dimension,
    hermitian_parts,
    is_unitarily_irreducible,
    load_matrix,
    parse_matrix_text,
)
from .spectral import EigensolverError, scan, spectrum_slice, two_eigenvalue_angles
from .toeplitz import (
    ToeplitzHypothesisError,
    ToeplitzSpec,
    block_decomposition,
    build_toeplitz,
    swap_variant,
    verify_prop_toes,
)

__version__ = "0.1.0"

__all__ = [
    "BasePolynomial",
    "EigensolverError",
    "GauWuError",
    "GauWuResult",
    "GeometryError",
    "HermitianPencil",
    "MatrixFormatError",
    "PolynomialError",
    "RunConfig",
    "ToeplitzHypothesisError",
    "ToeplitzSpec",
    "analyze",
    "as_matrix",
    "block_decomposition",
    "boundary_distance",
    "boundary_points",
    "build_toeplitz",
    "check_witnesses",
    "classify",
    "collinear_groups",
    "commutant_dimension",
    "compute_base_polynomial",
    "curve_points",
    "detect_seeds",
    "equal_up_to_tol",
    "evaluate",
    "format_polynomial",
    "hermitian_parts",
    "is_unitarily_irreducible",
    "load_matrix",
    "order_at_point",
    "parse_matrix_text",
    "real_singularities",
    "restrict_to_angle",
    "rotate",
    "scan",
    "spectrum_slice",
    "swap_variant",
    "theorem_bounds",
    "toeplitz_k",
    "two_eigenvalue_angles",
    "verify_factorization",
    "verify_prop_toes",
    "witness_lower_bound",
    "__version__",
]
