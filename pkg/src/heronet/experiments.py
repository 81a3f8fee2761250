"""Calibration sweeps and detection benchmarks.

Everything here is deterministic given its base seed: per-task seeds
are derived arithmetically and results are reduced into pre-sized
arrays, so reruns produce identical numbers.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from typing import Sequence

import networkx as nx
import numpy as np
from scipy.stats import spearmanr

from .backbone import DissolvedError, iterative_backbone, optimal_alpha
from .dissimilarity import DEFAULT_WEIGHTS, DissimilarityWeights, graph_features
from .generators import CovertSpec, TopologySpec, gen_covert, gen_topology, grow_partial
from .graph import (
    Graph,
    _id_key,
    components,
    drop_isolated,
    edge_betweenness,
    global_efficiency,
    induced_subgraph,
    structural_metrics,
)
from .heron import ActivationConfig, EdgePartition, activate, hic_of_partition

_SEED_STRIDE = 104729  # prime; keeps derived seed streams disjoint


@dataclass(frozen=True)
class SweepResult:
    """Mean/std of the asymmetry coefficient over a parameter grid."""

    grid: tuple[float, ...]
    hic_mean: tuple[float, ...]
    hic_std: tuple[float, ...]
    aux: dict[str, tuple[float, ...]] = field(default_factory=dict)

    def __post_init__(self):
        for name, series in (("hic_mean", self.hic_mean), ("hic_std", self.hic_std),
                             *self.aux.items()):
            if len(series) != len(self.grid):
                raise ValueError(f"series {name!r} length differs from grid")


def default_p_grid() -> tuple[float, ...]:
    return tuple(round(0.05 * i, 2) for i in range(1, 20))


def uniform_activation_sweep(
    n: int = 100,
    p_grid: Sequence[float] | None = None,
    seeds: int = 100,
    base_seed: int = 0,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> SweepResult:
    """Asymmetry of uniform edge activation on the complete graph K_n.

    For each activation probability p the coefficient is averaged over
    independent activations; global efficiency of the active part, the
    inactive part and their average are tracked alongside.
    """
    grid = default_p_grid() if p_grid is None else tuple(float(p) for p in p_grid)
    if seeds < 1:
        raise ValueError("seeds must be at least 1")
    base = gen_topology(TopologySpec(model="complete", n=n))
    fb = graph_features(base, with_centrality=weights.w3 > 0)
    hic = np.zeros((len(grid), seeds))
    eff_a = np.zeros_like(hic)
    eff_i = np.zeros_like(hic)
    for gi, p in enumerate(grid):
        for s in range(seeds):
            cfg = ActivationConfig(mode="uniform", p=p,
                                   seed=base_seed + _SEED_STRIDE * gi + s)
            part = activate(base, cfg)
            hic[gi, s] = hic_of_partition(part, weights, base_features=fb).hic
            eff_a[gi, s] = global_efficiency(part.active_graph())
            eff_i[gi, s] = global_efficiency(part.inactive_graph())
    return SweepResult(
        grid=grid,
        hic_mean=tuple(hic.mean(axis=1)),
        hic_std=tuple(hic.std(axis=1, ddof=1) if seeds > 1 else np.zeros(len(grid))),
        aux={
            "efficiency_active": tuple(eff_a.mean(axis=1)),
            "efficiency_inactive": tuple(eff_i.mean(axis=1)),
            "efficiency_average": tuple(((eff_a + eff_i) / 2.0).mean(axis=1)),
        },
    )


def gamma_sweep(
    base: TopologySpec | None = None,
    gammas: Sequence[float] = (-2.0, -1.0, 0.0, 1.0, 2.0),
    seeds: int = 100,
    active_fraction: float = 0.10,
    base_seed: int = 0,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> SweepResult:
    """Asymmetry of betweenness-biased activation versus the bias exponent.

    Draws a fresh base graph per seed, activates a fixed fraction of
    edges with sampling weights b_e ** gamma, and averages the
    coefficient per gamma.
    """
    spec = TopologySpec(model="er", n=100, p=0.1) if base is None else base
    gam = tuple(float(v) for v in gammas)
    hic = np.zeros((len(gam), seeds))
    for s in range(seeds):
        g = gen_topology(dataclasses.replace(spec, seed=base_seed + s))
        fb = graph_features(g, with_centrality=weights.w3 > 0)
        for gi, gamma in enumerate(gam):
            cfg = ActivationConfig(
                mode="betweenness", gamma=gamma, active_fraction=active_fraction,
                seed=base_seed + _SEED_STRIDE * (gi + 1) + s)
            part = activate(g, cfg)
            hic[gi, s] = hic_of_partition(part, weights, base_features=fb).hic
    return SweepResult(
        grid=gam,
        hic_mean=tuple(hic.mean(axis=1)),
        hic_std=tuple(hic.std(axis=1, ddof=1) if seeds > 1 else np.zeros(len(gam))),
    )


def spearman_trend(grid: Sequence[float], values: Sequence[float]) -> tuple[float, float]:
    """Spearman rank correlation (rho, p-value) of values against the grid."""
    rho, p = spearmanr(list(grid), list(values))
    return float(rho), float(p)


@dataclass(frozen=True)
class RemovalSensitivity:
    """Metric trajectories under targeted removal and their sensitivities.

    ``series[m]`` holds metric m at t = 0 (intact) through t = T;
    ``sensitivity[m]`` is the mean absolute deviation from the intact
    value, relative to its magnitude (epsilon-guarded).
    """

    mode: str
    removed: tuple
    series: dict[str, tuple[float, ...]]
    sensitivity: dict[str, float]


_EPS = 1e-9


def _greedy_modularity(g: Graph) -> float:
    if g.m == 0 or g.n < 2:
        return 0.0
    gx = g.to_networkx()
    comms = nx.community.greedy_modularity_communities(gx, weight=None)
    return float(nx.community.modularity(gx, comms, weight=None))


def _lcc_fraction(g: Graph, n_original: int) -> float:
    comps = components(g)
    return (len(comps[0]) / n_original) if comps else 0.0


def removal_sensitivity(
    g: Graph,
    removal_fraction: float = 0.10,
    mode: str = "node",
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> RemovalSensitivity:
    """Compare metric reactions to targeted degradation of g.

    Node mode removes ceil(fraction * N) nodes of the largest component
    one at a time in descending original degree (ties by node id). After
    each removal it tracks: the asymmetry coefficient of the partition
    {surviving edges active, edges touching removed nodes inactive}
    against the intact graph; largest-component fraction under this
    degree-targeted sequence; largest-component fraction under an
    adaptive betweenness-targeted sequence (target recomputed on the
    residual); mean clustering; and greedy-community modularity of the
    residual. Edge mode (descending original edge betweenness) is the
    flag-gated variant; there the two robustness columns coincide.
    """
    if mode not in ("node", "edge"):
        raise ValueError(f"unknown removal mode {mode!r}")
    if not 0.0 < removal_fraction <= 1.0:
        raise ValueError("removal_fraction must be in (0, 1]")
    comps = components(g)
    if not comps:
        raise ValueError("graph has no nodes")
    g0 = induced_subgraph(g, comps[0])
    n0 = g0.n
    fb = graph_features(g0, with_centrality=weights.w3 > 0)

    series: dict[str, list[float]] = {
        "hic": [], "degree_robustness": [], "betweenness_robustness": [],
        "clustering": [], "modularity": [],
    }

    def record(residual: Graph, partition_active: frozenset, bet_residual: Graph):
        part = EdgePartition(base=g0, active=partition_active)
        series["hic"].append(hic_of_partition(part, weights, base_features=fb).hic)
        series["degree_robustness"].append(_lcc_fraction(residual, n0))
        series["betweenness_robustness"].append(_lcc_fraction(bet_residual, n0))
        series["clustering"].append(structural_metrics(residual).mean_clustering)
        series["modularity"].append(_greedy_modularity(residual))

    if mode == "node":
        t_steps = math.ceil(removal_fraction * n0)
        degs = {v: int(d) for v, d in zip(g0.node_ids, g0.degrees)}
        order = sorted(g0.node_ids, key=lambda v: (-degs[v], _id_key(v)))[:t_steps]
        removed: list = []
        removed_set: set = set()
        record(g0, g0.edge_set, g0)
        residual = g0
        bet_residual = g0
        for v in order:
            removed.append(v)
            removed_set.add(v)
            residual = induced_subgraph(residual, set(residual.node_ids) - {v})
            # adaptive: recompute the betweenness target on the current residual
            bx = nx.betweenness_centrality(bet_residual.to_networkx(), weight=None)
            best = max(bx.values())
            target = min((u for u in bet_residual.node_ids if bx[u] >= best - 1e-15),
                         key=_id_key)
            bet_residual = induced_subgraph(
                bet_residual, set(bet_residual.node_ids) - {target})
            active = frozenset(e for e in g0.edge_set
                               if e[0] not in removed_set and e[1] not in removed_set)
            record(residual, active, bet_residual)
        removed_out = tuple(removed)
    else:
        t_steps = math.ceil(removal_fraction * g0.m)
        bet = edge_betweenness(g0)
        order = sorted(g0.edge_set,
                       key=lambda e: (-bet[e], _id_key(e[0]), _id_key(e[1])))[:t_steps]
        removed_edges: list = []
        record(g0, g0.edge_set, g0)
        for e in order:
            removed_edges.append(e)
            active = g0.edge_set - frozenset(removed_edges)
            part = EdgePartition(base=g0, active=active)
            residual = part.active_graph()
            record(residual, active, residual)
        removed_out = tuple(removed_edges)

    sens: dict[str, float] = {}
    for name, vals in series.items():
        m0 = vals[0]
        devs = [abs(v - m0) / (abs(m0) + _EPS) for v in vals[1:]]
        sens[name] = float(np.mean(devs)) if devs else 0.0
    return RemovalSensitivity(
        mode=mode,
        removed=removed_out,
        series={k: tuple(v) for k, v in series.items()},
        sensitivity=sens,
    )


SENSITIVITY_TOPOLOGIES = ("er", "barabasi-albert", "watts-strogatz",
                          "planted-partition", "hub-and-spoke")


@dataclass(frozen=True)
class SensitivityTable:
    """Per-topology sensitivity scores of each tracked metric."""

    rows: dict[str, dict[str, float]]

    def hic_rank_first(self) -> dict[str, bool]:
        out = {}
        for topo, scores in self.rows.items():
            best = max(scores.values())
            out[topo] = scores["hic"] >= best - 1e-15
        return out


def sensitivity_comparison(
    n: int = 100,
    seed: int = 0,
    removal_fraction: float = 0.10,
    mode: str = "node",
    topologies: Sequence[str] = SENSITIVITY_TOPOLOGIES,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> SensitivityTable:
    """Removal sensitivity of every metric across benchmark topologies."""
    rows = {}
    for topo in topologies:
        g = gen_topology(TopologySpec(model=topo, n=n, seed=seed))
        rows[topo] = removal_sensitivity(
            g, removal_fraction=removal_fraction, mode=mode, weights=weights
        ).sensitivity
    return SensitivityTable(rows=rows)


@dataclass(frozen=True)
class DetectionReport:
    """Recall/precision of corrupt labels along backbone iterations.

    ``recall_by_iteration`` pools runs by step index (ragged runs simply
    stop contributing). ``mean_recall`` averages over every (run, step)
    pair. Values are None when the ground truth has no corrupt nodes.
    """

    seeds: int
    recall_by_iteration: tuple[float, ...]
    precision_by_iteration: tuple[float, ...]
    retained_by_iteration: tuple[float, ...]
    runs_reaching_iteration: tuple[int, ...]
    mean_recall: float | None
    mean_precision: float | None
    final_contains_corrupt_fraction: float
    mean_steps: float


def covert_benchmark(
    spec: CovertSpec = CovertSpec(),
    seeds: int = 100,
    max_steps: int = 20,
    base_seed: int = 0,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> DetectionReport:
    """Iterated backbone extraction on labeled covert-core networks.

    Per seed, runs the backbone until dissolution (or max_steps) and
    scores the retained (non-isolated active) node set against the
    ground truth at every iteration.
    """
    per_iter_rec: list[list[float]] = []
    per_iter_pre: list[list[float]] = []
    per_iter_ret: list[list[float]] = []
    all_rec: list[float] = []
    all_pre: list[float] = []
    final_hits = 0
    total_steps = 0
    labeled_runs = 0
    for s in range(seeds):
        net = gen_covert(dataclasses.replace(spec, seed=base_seed + s))
        trace = iterative_backbone(net.graph, max_steps=max_steps, weights=weights)
        total_steps += len(trace.steps)
        n_corrupt = len(net.corrupt)
        if n_corrupt:
            labeled_runs += 1
        final_retained: set = set()
        for k, step in enumerate(trace.steps):
            retained = {u for u, v, _ in step.active.edges} | {
                v for u, v, _ in step.active.edges}
            while len(per_iter_rec) <= k:
                per_iter_rec.append([])
                per_iter_pre.append([])
                per_iter_ret.append([])
            per_iter_ret[k].append(len(retained))
            if retained:
                tp = len(retained & net.corrupt)
                per_iter_pre[k].append(tp / len(retained))
                all_pre.append(tp / len(retained))
                if n_corrupt:
                    per_iter_rec[k].append(tp / n_corrupt)
                    all_rec.append(tp / n_corrupt)
                final_retained = retained
        if final_retained & net.corrupt:
            final_hits += 1
    return DetectionReport(
        seeds=seeds,
        recall_by_iteration=tuple(float(np.mean(v)) if v else 0.0 for v in per_iter_rec)
        if labeled_runs else (),
        precision_by_iteration=tuple(float(np.mean(v)) if v else 0.0 for v in per_iter_pre),
        retained_by_iteration=tuple(float(np.mean(v)) if v else 0.0 for v in per_iter_ret),
        runs_reaching_iteration=tuple(len(v) for v in per_iter_ret),
        mean_recall=float(np.mean(all_rec)) if all_rec else None,
        mean_precision=float(np.mean(all_pre)) if all_pre else None,
        final_contains_corrupt_fraction=final_hits / seeds if seeds else 0.0,
        mean_steps=total_steps / seeds if seeds else 0.0,
    )


@dataclass(frozen=True)
class ScalingReport:
    """Attack robustness of extracted backbones versus network size."""

    sizes: tuple[int, ...]
    robustness_mean: tuple[float, ...]
    robustness_std: tuple[float, ...]
    peak_hic_mean: tuple[float, ...]
    spearman_rho: float
    spearman_p: float


def _scaled_covert_spec(template: CovertSpec, size: int, seed: int) -> CovertSpec:
    """Resize a covert template holding expected degrees fixed.

    Densities in the template are read as mean-degree targets at the
    template's own n and rescaled per size, so agents keep a bounded
    number of ties as the organization grows instead of the graph
    densifying with n. At size == template.n this is the identity. The
    density ordering intra > inter > background survives the rescaling,
    so the covert core stays the relatively densest part at every size.
    """
    t = template
    h0 = t.n - round(t.corrupt_fraction * t.n)
    b0 = max(1, round(t.corrupt_fraction * t.n) // max(1, t.n_groups))
    deg_background = t.p_background * max(0, h0 - 1)
    deg_intra = t.p_intra_corrupt * max(0, b0 - 1)
    deg_inter = t.p_inter_corrupt * h0

    h = size - round(t.corrupt_fraction * size)
    b = max(1, round(t.corrupt_fraction * size) // max(1, t.n_groups))
    p_background = min(1.0, deg_background / (h - 1)) if h > 1 else 1.0
    p_intra = min(1.0, deg_intra / (b - 1)) if b > 1 else 1.0
    p_inter = min(1.0, deg_inter / h) if h > 0 else 1.0
    return dataclasses.replace(t, n=size, p_background=p_background,
                               p_intra_corrupt=p_intra, p_inter_corrupt=p_inter,
                               seed=seed)


def _attack_auc(active: Graph) -> float:
    """Retention area of one skeleton under a degree-targeted attack.

    Removes ceil(0.1 * n) skeleton nodes one at a time in descending
    original degree (ties by node id) and averages the fraction of
    skeleton nodes still inside the largest surviving component. 1 means
    the skeleton shrugs the attack off; 0 means it shatters at once.
    """
    incident = {u for u, v, _ in active.edges} | {v for u, v, _ in active.edges}
    if not incident:
        return 0.0
    skeleton = induced_subgraph(active, incident)
    n0 = skeleton.n
    t_steps = math.ceil(0.1 * n0)
    degs = {v: int(d) for v, d in zip(skeleton.node_ids, skeleton.degrees)}
    order = sorted(skeleton.node_ids, key=lambda v: (-degs[v], _id_key(v)))[:t_steps]
    residual = skeleton
    fractions = []
    for v in order:
        residual = induced_subgraph(residual, set(residual.node_ids) - {v})
        fractions.append(_lcc_fraction(residual, n0))
    return float(np.mean(fractions)) if fractions else 0.0


def _run_robustness(trace) -> tuple[float, float]:
    """Mean per-iteration attack retention, and the peak coefficient.

    Each backbone iteration's active skeleton gets a degree-targeted
    attack; the retention areas are averaged over the iterations the
    trace actually ran. An empty trace scores 0.
    """
    areas = [_attack_auc(step.active) for step in trace.steps]
    peak = max((s.hic for s in trace.steps), default=0.0)
    return (float(np.mean(areas)) if areas else 0.0), float(peak)


def scaling_benchmark(
    sizes: Sequence[int] = (10, 50, 100, 500, 1000),
    spec: CovertSpec = CovertSpec(),
    seeds: int = 20,
    max_steps: int = 6,
    base_seed: int = 0,
    max_candidates: int | None = 32,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> ScalingReport:
    """Backbone attack robustness of covert-core networks across sizes.

    The template's densities are rescaled per size to hold expected
    degrees constant (see _scaled_covert_spec), so large organizations
    are sparse rather than uniformly denser copies of small ones.
    Robustness of one run is the mean degree-targeted attack retention
    of its backbone skeletons. Heavy: intended to run behind an explicit
    flag. The threshold search is thinned to max_candidates quantiles to
    keep large sizes tractable.
    """
    rob = np.zeros((len(sizes), seeds))
    peak = np.zeros_like(rob)
    for si, size in enumerate(sizes):
        for s in range(seeds):
            net = gen_covert(_scaled_covert_spec(
                spec, int(size), base_seed + _SEED_STRIDE * si + s))
            trace = iterative_backbone(net.graph, max_steps=max_steps, weights=weights,
                                       max_candidates=max_candidates)
            rob[si, s], peak[si, s] = _run_robustness(trace)
    rho, p = spearman_trend(
        [s for s in sizes for _ in range(seeds)], list(rob.reshape(-1)))
    return ScalingReport(
        sizes=tuple(int(s) for s in sizes),
        robustness_mean=tuple(rob.mean(axis=1)),
        robustness_std=tuple(rob.std(axis=1, ddof=1) if seeds > 1 else np.zeros(len(sizes))),
        peak_hic_mean=tuple(peak.mean(axis=1)),
        spearman_rho=rho,
        spearman_p=p,
    )


def partial_info_benchmark(
    spec: CovertSpec = CovertSpec(),
    fractions: Sequence[float] = tuple(round(0.1 * i, 1) for i in range(1, 11)),
    seeds: int = 100,
    base_seed: int = 0,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> SweepResult:
    """First-step backbone asymmetry on nested partial views of a network.

    Per seed, observes growing induced subgraphs along a random node
    order and records the peak coefficient of a single backbone step on
    each view; fraction 1.0 reproduces the full-network value.
    """
    frs = tuple(float(f) for f in fractions)
    vals = np.zeros((len(frs), seeds))
    for s in range(seeds):
        net = gen_covert(dataclasses.replace(spec, seed=base_seed + s))
        views = grow_partial(net, frs, seed=base_seed + s)
        for fi, sub in enumerate(views):
            if sub.n < 2 or sub.m == 0:
                continue
            try:
                vals[fi, s] = optimal_alpha(sub, weights=weights).hic
            except DissolvedError:
                vals[fi, s] = 0.0
    return SweepResult(
        grid=frs,
        hic_mean=tuple(vals.mean(axis=1)),
        hic_std=tuple(vals.std(axis=1, ddof=1) if seeds > 1 else np.zeros(len(frs))),
    )
