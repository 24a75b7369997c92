"""hypnorm: word metrics, sphere block operators, and desk-scale numerical
verification of Haagerup/Khintchine-type operator-norm inequalities.

The package computes, for free groups and free products of cyclic groups:
spheres and balls of the word metric, four-point hyperbolicity constants,
sphere-indexed block matrices of operator-valued functions, truncated
left-regular convolution operators, and the right-hand sides of the
associated operator-norm inequalities — then verifies the inequalities on
seeded random trials, exactly where exact computation is possible and
lower-bound-safely where truncation is involved.
"""

__version__ = "0.1.0"

from ._kernels import BACKEND as KERNEL_BACKEND
from .bounds import (
    bound_buchholz,
    bound_haagerup_scalar,
    bound_lemma_block,
    bound_main_theorem,
    bound_rapid_decay,
    bound_remark3,
)
from .counterexample import build_counterexample, counterexample_report, t_count
from .errors import (
    ConvergenceError,
    HypnormError,
    InvalidElementError,
    InvalidInputError,
    InvalidSplitError,
    ResourceLimitError,
    UnsupportedBoundError,
)
from .functions import SphereFunction, delta_function, random_sphere_function, sphere_indicator
from .groups import (
    BallIndex,
    CyclicFreeProduct,
    FreeGroup,
    GroupElement,
    GroupModel,
    HyperbolicityEstimate,
    SphereIndex,
    decomposition_multiplicity,
    distance,
    enumerate_ball,
    enumerate_sphere,
    estimate_delta,
    geodesic_split,
    inverse,
    multiply,
    parse_group,
    word_length,
)
from .operators import BlockOperator, TruncatedOperator, assemble_M, block_operator, truncated_lambda
from .spectral import NormResult, adjoint, hs_norm, operator_norm
from .trace import ProofTraceReport, proof_trace_check

__all__ = [
    "__version__",
    "KERNEL_BACKEND",
    # groups
    "GroupModel", "FreeGroup", "CyclicFreeProduct", "GroupElement",
    "SphereIndex", "BallIndex", "HyperbolicityEstimate", "parse_group",
    "word_length", "multiply", "inverse", "enumerate_sphere", "enumerate_ball",
    "geodesic_split", "decomposition_multiplicity", "distance", "estimate_delta",
    # spectral
    "NormResult", "operator_norm", "hs_norm", "adjoint",
    # functions and operators
    "SphereFunction", "delta_function", "sphere_indicator", "random_sphere_function",
    "BlockOperator", "TruncatedOperator", "assemble_M", "block_operator", "truncated_lambda",
    # bounds
    "bound_haagerup_scalar", "bound_rapid_decay", "bound_buchholz",
    "bound_main_theorem", "bound_lemma_block", "bound_remark3",
    # counterexample and trace
    "t_count", "build_counterexample", "counterexample_report",
    "ProofTraceReport", "proof_trace_check",
    # errors
    "HypnormError", "InvalidElementError", "InvalidSplitError", "InvalidInputError",
    "UnsupportedBoundError", "ResourceLimitError", "ConvergenceError",
]
