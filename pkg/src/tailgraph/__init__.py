"""Graph analysis toolkit for very large directed graphs.

tailgraph ingests directed edge lists into a compact immutable adjacency
form and provides the statistical machinery to characterize them: degree
and component-size distributions, maximum-likelihood heavy-tail fitting
with Kolmogorov-Smirnov bootstrap goodness of fit, likelihood-ratio model
comparison, and distance/diameter estimation via approximate neighborhood
counting and sampled BFS.  Host and pay-level-domain aggregation of web
graphs is supported through the Public Suffix List.
"""

from tailgraph.aggregation import (
    GroupMap,
    SuffixRuleSet,
    aggregate_graph,
    load_public_suffix_list,
    parse_url_host,
    pld_of_host,
)
from tailgraph.components import (
    ComponentSummary,
    component_size_distribution,
    strongly_connected_components,
    weakly_connected_components,
)
from tailgraph.distances import (
    DiameterEstimates,
    HopPlot,
    anf_hopplot,
    bfs_diameter_lower_bound,
    bfs_distances,
    effective_diameter,
)
from tailgraph.empirical import EmpiricalDistribution
from tailgraph.errors import (
    DegenerateInputError,
    EdgeListParseError,
    InsufficientTailError,
    MissingArtifactError,
    NoPayLevelDomainError,
    OptimizerError,
    UrlHostError,
)
from tailgraph.graphcore import (
    AdjacencyGraph,
    DegreeHistogram,
    degree_sequence,
    load_edge_list,
    transpose,
    write_edge_list,
    write_label_map,
)
from tailgraph.models import ModelKind, ModelParams
from tailgraph.modelcompare import (
    ComparisonResult,
    PlausibilityVerdict,
    Support,
    Verdict,
    best_alternative_tournament,
    classify_comparison,
    classify_support,
    loglikelihood_ratio,
    plausibility_scan,
)
from tailgraph.tailfit import (
    FitResult,
    fit_alternative,
    fit_power_law,
    gof_pvalue,
    ks_statistic,
    pvalue_precision,
    sample_power_law,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGraph",
    "ComparisonResult",
    "ComponentSummary",
    "DegenerateInputError",
    "DegreeHistogram",
    "DiameterEstimates",
    "EdgeListParseError",
    "EmpiricalDistribution",
    "FitResult",
    "GroupMap",
    "HopPlot",
    "InsufficientTailError",
    "MissingArtifactError",
    "ModelKind",
    "ModelParams",
    "NoPayLevelDomainError",
    "OptimizerError",
    "PlausibilityVerdict",
    "Support",
    "SuffixRuleSet",
    "UrlHostError",
    "Verdict",
    "aggregate_graph",
    "anf_hopplot",
    "best_alternative_tournament",
    "bfs_diameter_lower_bound",
    "bfs_distances",
    "classify_comparison",
    "classify_support",
    "component_size_distribution",
    "degree_sequence",
    "effective_diameter",
    "fit_alternative",
    "fit_power_law",
    "gof_pvalue",
    "ks_statistic",
    "load_edge_list",
    "load_public_suffix_list",
    "loglikelihood_ratio",
    "parse_url_host",
    "plausibility_scan",
    "pld_of_host",
    "pvalue_precision",
    "sample_power_law",
    "strongly_connected_components",
    "transpose",
    "weakly_connected_components",
    "write_edge_list",
    "write_label_map",
]
