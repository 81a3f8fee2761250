"""Structural-asymmetry analysis of co-bidding networks.

Quantifies how asymmetric an edge split of a network is (dissimilarity
triangle area), extracts significance backbones that maximize that
asymmetry, benchmarks covert-core detection on labeled synthetic
networks, and flags temporal anomalies in sliding-window series.
"""
from .graph import (
    Graph,
    DistanceProfile,
    MetricBundle,
    build_graph,
    complement,
    components,
    distance_profile,
    drop_isolated,
    edge_betweenness,
    global_efficiency,
    induced_subgraph,
    structural_metrics,
    subgraph_with_edges,
)
from .dissimilarity import (
    DEFAULT_WEIGHTS,
    TOPOLOGY_WEIGHTS,
    DissimilarityResult,
    DissimilarityWeights,
    alpha_centrality_distribution,
    d_dissimilarity,
    d_from_features,
    graph_features,
    jensen_shannon,
    nnd,
    pairwise_dissimilarity,
)
from .heron import (
    ActivationConfig,
    DegenerateTriangleWarning,
    EdgePartition,
    PartitionHic,
    activate,
    heron_coefficient,
    hic_of_partition,
)
from .backbone import (
    BackboneStep,
    BackboneTrace,
    DissolvedError,
    disparity_significance,
    iterative_backbone,
    optimal_alpha,
    split_at_alpha,
)
from .generators import (
    CovertSpec,
    LabeledNetwork,
    TopologySpec,
    gen_covert,
    gen_topology,
    grow_partial,
)
from .experiments import (
    DetectionReport,
    RemovalSensitivity,
    ScalingReport,
    SensitivityTable,
    SweepResult,
    covert_benchmark,
    gamma_sweep,
    partial_info_benchmark,
    removal_sensitivity,
    scaling_benchmark,
    sensitivity_comparison,
    spearman_trend,
    uniform_activation_sweep,
)
from .bids import (
    BidParseError,
    BidRecord,
    cobid_network,
    parse_bids,
    read_bids,
)
from .temporal import (
    AnomalySeries,
    NullTestResult,
    Window,
    WindowSpec,
    anomaly_scores,
    hic_series,
    poisson_null_graph,
    poisson_null_test,
    single_step_hic,
    window_series,
    window_stats,
)
from .report import Report, config_hash, emit_report, parse_report
from .io import load_graph, read_edge_list, save_graph, write_edge_list

__version__ = "0.1.0"
