"""saddleqr: block Gram-Schmidt QR solvers and stability benchmarks for
symmetric saddle-point systems."""

from .blockgs import BlockPartition, BlockQR, ReorthDiagnostics, bcgs, bcgs2
from .errors import (
    DegenerateSolutionError,
    DimensionError,
    HypothesisError,
    LinAlgError,
    RankDeficientError,
    SingularMatrixError,
    ZeroDiagonalError,
)
from .householder import ThinQR, q_by_column_application, qr_residuals, thin_householder_qr
from .matrix import (
    MACHINE_EPS,
    DenseMatrix,
    Vector,
    hconcat,
    mat_vec,
    matmul,
    transpose,
    vconcat,
    vector_norm,
)
from .mmio import MatrixMarketError, read_matrix, read_vector, write_matrix, write_vector
from .norms import (
    NormEstimate,
    condition_number,
    exact_singular_values,
    exact_spectral_norm,
    inverse_norm,
    jacobi_eigenvalues,
    spectral_norm,
)
from .saddle import (
    METHODS,
    SaddleBlocks,
    SaddleSolution,
    SolveDetail,
    ValidationReport,
    assemble,
    partition,
    solve,
    solve_detailed,
    validate,
)
from .stability import (
    Lemma1Bounds,
    PerturbationBound,
    StabilityReport,
    backward_certificate,
    lemma1_bounds,
    metrics,
    theorem1_bound,
)
from .testgen import (
    GeneratorSpec,
    ScaledProblem,
    hilbert,
    logspace_diag,
    matrix1,
    matrix2,
    ones_rank_one,
    random_orthogonal,
    scale_problem,
)
from .triangular import CholeskyResult, back_substitute, cholesky

__version__ = "0.1.0"

__all__ = [
    "MACHINE_EPS",
    "METHODS",
    "BlockPartition",
    "BlockQR",
    "CholeskyResult",
    "DegenerateSolutionError",
    "DenseMatrix",
    "DimensionError",
    "GeneratorSpec",
    "HypothesisError",
    "Lemma1Bounds",
    "LinAlgError",
    "MatrixMarketError",
    "NormEstimate",
    "PerturbationBound",
    "RankDeficientError",
    "ReorthDiagnostics",
    "SaddleBlocks",
    "SaddleSolution",
    "ScaledProblem",
    "SingularMatrixError",
    "SolveDetail",
    "StabilityReport",
    "ThinQR",
    "ValidationReport",
    "Vector",
    "ZeroDiagonalError",
    "assemble",
    "back_substitute",
    "backward_certificate",
    "bcgs",
    "bcgs2",
    "cholesky",
    "condition_number",
    "exact_singular_values",
    "exact_spectral_norm",
    "hconcat",
    "hilbert",
    "inverse_norm",
    "jacobi_eigenvalues",
    "lemma1_bounds",
    "logspace_diag",
    "mat_vec",
    "matmul",
    "matrix1",
    "matrix2",
    "metrics",
    "ones_rank_one",
    "partition",
    "q_by_column_application",
    "qr_residuals",
    "random_orthogonal",
    "read_matrix",
    "read_vector",
    "scale_problem",
    "solve",
    "solve_detailed",
    "spectral_norm",
    "theorem1_bound",
    "thin_householder_qr",
    "transpose",
    "validate",
    "vconcat",
    "vector_norm",
    "write_matrix",
    "write_vector",
]
