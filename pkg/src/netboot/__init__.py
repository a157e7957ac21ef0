"""Bootstrap inference for networks.

Two nonparametric procedures: the patchwork bootstrap (snowball-sampled
patches, degree-downweighted resampling, cross-validated intervals) for
large or partially observed graphs, and the Snijders-Borgatti vertex
bootstrap for small fully observed ones.  Synthetic polylog-degree
generators and a Monte Carlo coverage harness round out the toolkit.
"""

__version__ = "0.1.0"

from .errors import NetbootError, ParameterError, ParseError
from .graph import (
    AdjacencyMatrix,
    FragilityFit,
    Graph,
    GraphStats,
    gamma_fragility,
    graph_stats,
    graph_to_matrix,
    load_adjacency_matrix,
    load_edge_list,
    matrix_to_graph,
    remove_vertices,
)
from .generate import DegreeDistribution, configuration_model, polylog_pmf, sample_degree_sequence
from .lsmi import Lsmi, Patch, SeedNest, grow_lsmi, lsmi, lsmi_union, patch_view, sample_seeds
from .estimators import DegreeDistributionEstimate, density_from_mu, lsmi_dd
from .intervals import ConfidenceInterval, basic_ci, bootstrap_ci, percentile_ci
from .patchwork import BootCi, BootstrapDistribution, CvResult, boot_ci, boot_dd, lsmi_cv
from .vertexboot import (
    StatBootstrap,
    bootstrap_statistic,
    compare_densities,
    matrix_density,
    matrix_mean_degree,
    matrix_transitivity,
    vertboot,
)
from .coverage import CoverageConfig, CoverageReport, run_coverage

__all__ = [
    "AdjacencyMatrix",
    "BootCi",
    "BootstrapDistribution",
    "ConfidenceInterval",
    "CoverageConfig",
    "CoverageReport",
    "CvResult",
    "DegreeDistribution",
    "DegreeDistributionEstimate",
    "FragilityFit",
    "Graph",
    "GraphStats",
    "Lsmi",
    "NetbootError",
    "ParameterError",
    "ParseError",
    "Patch",
    "SeedNest",
    "StatBootstrap",
    "basic_ci",
    "boot_ci",
    "boot_dd",
    "bootstrap_ci",
    "bootstrap_statistic",
    "compare_densities",
    "configuration_model",
    "density_from_mu",
    "gamma_fragility",
    "graph_stats",
    "graph_to_matrix",
    "grow_lsmi",
    "load_adjacency_matrix",
    "load_edge_list",
    "lsmi",
    "lsmi_cv",
    "lsmi_dd",
    "lsmi_union",
    "matrix_density",
    "matrix_mean_degree",
    "matrix_to_graph",
    "matrix_transitivity",
    "patch_view",
    "percentile_ci",
    "polylog_pmf",
    "remove_vertices",
    "run_coverage",
    "sample_degree_sequence",
    "sample_seeds",
    "vertboot",
]
