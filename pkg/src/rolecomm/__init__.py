"""Role-communities of directed networks.

Pipeline: Role-Based Similarity from directed walk counts, sparsification
with the Relaxed Minimum Spanning Tree, and multiscale partitioning of the
resulting similarity network with Markov Stability.
"""

from .errors import (
    ConfigError,
    ConvergenceError,
    OutputError,
    ParseError,
    RolecommError,
)
from .graph_io import DegreeVectors, DirectedGraph, degrees, parse_edge_list, read_edge_list
from .rbs import FeatureMatrix, RbsConfig, SpectralInfo, feature_matrix, rbs_matrix, spectral_radius
from .rmst import RmstNetwork, build_rmst, dissimilarity, local_scale, minimum_spanning_tree, mlink_all_pairs, relax
from .stability import (
    MarkovProcess,
    RobustScale,
    ScanResult,
    markov_process,
    select_robust,
    stability_score,
    time_scan,
    transition_matrix,
)
from .louvain import louvain_optimize
from .partition import Partition
from .vi import mean_pairwise_vi, variation_of_information

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConvergenceError",
    "DegreeVectors",
    "DirectedGraph",
    "FeatureMatrix",
    "MarkovProcess",
    "OutputError",
    "ParseError",
    "Partition",
    "RbsConfig",
    "RmstNetwork",
    "RobustScale",
    "RolecommError",
    "ScanResult",
    "SpectralInfo",
    "build_rmst",
    "degrees",
    "dissimilarity",
    "feature_matrix",
    "local_scale",
    "louvain_optimize",
    "markov_process",
    "mean_pairwise_vi",
    "minimum_spanning_tree",
    "mlink_all_pairs",
    "parse_edge_list",
    "rbs_matrix",
    "read_edge_list",
    "relax",
    "select_robust",
    "spectral_radius",
    "stability_score",
    "time_scan",
    "transition_matrix",
    "variation_of_information",
]
