"""Sparse recovery certificates for sensing matrices.

Verification of unique-l1-recovery sparsity levels, l1-constrained minimal
singular values (upper estimates and certified lower bounds), and recovery
error bounds for basis pursuit, the Dantzig selector, and the LASSO, all on
top of in-house LP/SDP interior-point solvers.
"""

from .cmsv import (
    CmsvEstimate,
    RicEstimate,
    cmsv_lower_sdr,
    cmsv_oracle,
    compute_cmsv_ip,
    ric_exact,
)
from .core import (
    NoiseSpec,
    SensingMatrix,
    SparseSignal,
    l0_sparsity,
    l1_sparsity_level,
    normalize_columns,
)
from .ensembles import (
    ConcentrationRow,
    ConcentrationTable,
    EnsembleSpec,
    concentration_study,
    generate,
    sylvester_hadamard,
)
from .lp import LpProblem, LpSolution, solve_lp
from .recovery import (
    BoundReport,
    RecoveryResult,
    check_error_vector_sparsity,
    check_noise_event,
    default_lambda_n,
    evaluate_bounds,
    solve_bp,
    solve_ds,
    solve_lasso,
)
from .sdp import SdpProblem, SdpSolution, solve_sdp
from .verify import (
    VerificationResult,
    critical_sparsity_exact,
    nsp_oracle_exact,
    verify_l2,
    verify_linf,
)

__version__ = "0.1.0"

__all__ = [
    "SensingMatrix",
    "SparseSignal",
    "NoiseSpec",
    "l1_sparsity_level",
    "l0_sparsity",
    "normalize_columns",
    "LpProblem",
    "LpSolution",
    "solve_lp",
    "SdpProblem",
    "SdpSolution",
    "solve_sdp",
    "VerificationResult",
    "verify_linf",
    "verify_l2",
    "nsp_oracle_exact",
    "critical_sparsity_exact",
    "CmsvEstimate",
    "RicEstimate",
    "compute_cmsv_ip",
    "cmsv_lower_sdr",
    "cmsv_oracle",
    "ric_exact",
    "RecoveryResult",
    "BoundReport",
    "solve_bp",
    "solve_ds",
    "solve_lasso",
    "evaluate_bounds",
    "check_noise_event",
    "check_error_vector_sparsity",
    "default_lambda_n",
    "EnsembleSpec",
    "ConcentrationRow",
    "ConcentrationTable",
    "generate",
    "sylvester_hadamard",
    "concentration_study",
    "__version__",
]
