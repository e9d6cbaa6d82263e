"""Genuine multipartite entanglement criteria for Gaussian states."""

from .criteria import CholeskyParams, CriterionReport, Evaluator, evaluate, published_params
from .errors import CVGMEError
from .linalg import (
    CovarianceMatrix,
    apply_symplectic,
    is_physical,
    min_symplectic_eigenvalue,
    partial_transpose,
    symplectic_eigenvalues,
    williamson,
)
from .optimize import (
    DetectionResult,
    OptimizerConfig,
    minimize_gap,
    scan_squeezing,
    threshold_transmissivity,
)
from .states import (
    fully_inseparable,
    ghz_cm,
    lossy_channel,
    published_cm,
    split_squeezed_cm,
    test_bisep_cm,
    tmsv_cm,
)
from .trees import (
    Bipartition,
    LabeledTree,
    Tree,
    bipartitions,
    enumerate_trees,
    published_tree,
    reverse_level_order_label,
    validate_labeling,
)
from .witness import WitnessMatrix, detects, published_witness, state_from_witness, witness_from_params

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "CVGMEError",
    "CholeskyParams",
    "CovarianceMatrix",
    "CriterionReport",
    "DetectionResult",
    "Evaluator",
    "LabeledTree",
    "OptimizerConfig",
    "Tree",
    "WitnessMatrix",
    "apply_symplectic",
    "bipartitions",
    "detects",
    "enumerate_trees",
    "evaluate",
    "fully_inseparable",
    "ghz_cm",
    "is_physical",
    "lossy_channel",
    "min_symplectic_eigenvalue",
    "minimize_gap",
    "published_cm",
    "published_params",
    "published_tree",
    "published_witness",
    "partial_transpose",
    "reverse_level_order_label",
    "scan_squeezing",
    "split_squeezed_cm",
    "state_from_witness",
    "symplectic_eigenvalues",
    "test_bisep_cm",
    "threshold_transmissivity",
    "tmsv_cm",
    "validate_labeling",
    "williamson",
    "witness_from_params",
]
