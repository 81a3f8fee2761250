"""Synthetic network generators and ground-truth labeled benchmarks.

Topology generators cover the standard model families used for
calibration. The covert-core generator plants dense coordinated blocks
with optional leader nodes inside a sparse honest background, then
draws co-participation edge weights and per-node winner flags, giving a
labeled benchmark for detection experiments.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx
import numpy as np

from .graph import Graph, build_graph, induced_subgraph

TOPOLOGY_MODELS = (
    "complete",
    "er",
    "barabasi-albert",
    "watts-strogatz",
    "planted-partition",
    "hub-and-spoke",
)

_ALIASES = {"ba": "barabasi-albert", "ws": "watts-strogatz", "sbm": "planted-partition"}


@dataclass(frozen=True)
class TopologySpec:
    """Parameters of a synthetic topology draw (weight-1 edges).

    Model-specific fields: p (er edge probability), m (attachment count),
    k/beta (ring degree and rewiring probability), blocks/p_in/p_out
    (community benchmark), peripheral_p (edge probability among spokes).
    Unset fields fall back to the calibration defaults.
    """

    model: str
    n: int
    p: float | None = None
    m: int | None = None
    k: int | None = None
    beta: float | None = None
    blocks: int = 4
    p_in: float = 0.3
    p_out: float = 0.01
    peripheral_p: float = 0.05
    seed: int = 0

    def __post_init__(self):
        model = _ALIASES.get(self.model, self.model)
        object.__setattr__(self, "model", model)
        if model not in TOPOLOGY_MODELS:
            raise ValueError(f"unknown topology model {self.model!r}")
        if self.n < 2:
            raise ValueError("topology needs n >= 2")
        for name, val, lo, hi in (
            ("p", self.p, 0.0, 1.0),
            ("beta", self.beta, 0.0, 1.0),
            ("p_in", self.p_in, 0.0, 1.0),
            ("p_out", self.p_out, 0.0, 1.0),
            ("peripheral_p", self.peripheral_p, 0.0, 1.0),
        ):
            if val is not None and not lo <= val <= hi:
                raise ValueError(f"{name} must be in [{lo}, {hi}]")


def _from_networkx(gx: nx.Graph) -> Graph:
    return build_graph(((u, v, 1.0) for u, v in gx.edges()), extra_nodes=gx.nodes())


def gen_topology(spec: TopologySpec) -> Graph:
    """Draw a graph from the requested model, deterministic per seed."""
    model, n, seed = spec.model, spec.n, spec.seed
    if model == "complete":
        return _from_networkx(nx.complete_graph(n))
    if model == "er":
        p = 0.1 if spec.p is None else spec.p
        return _from_networkx(nx.gnp_random_graph(n, p, seed=seed))
    if model == "barabasi-albert":
        m = 2 if spec.m is None else spec.m
        if not 1 <= m < n:
            raise ValueError("barabasi-albert needs 1 <= m < n")
        return _from_networkx(nx.barabasi_albert_graph(n, m, seed=seed))
    if model == "watts-strogatz":
        k = 4 if spec.k is None else spec.k
        beta = 0.1 if spec.beta is None else spec.beta
        if not 0 < k < n:
            raise ValueError("watts-strogatz needs 0 < k < n")
        return _from_networkx(nx.watts_strogatz_graph(n, k, beta, seed=seed))
    if model == "planted-partition":
        blocks = spec.blocks
        if blocks < 1 or blocks > n:
            raise ValueError("planted-partition needs 1 <= blocks <= n")
        base, extra = divmod(n, blocks)
        sizes = [base + (1 if b < extra else 0) for b in range(blocks)]
        probs = [[spec.p_in if i == j else spec.p_out for j in range(blocks)]
                 for i in range(blocks)]
        return _from_networkx(nx.stochastic_block_model(sizes, probs, seed=seed))
    if model == "hub-and-spoke":
        rng = np.random.default_rng(seed)
        edges = [(0, i, 1.0) for i in range(1, n)]
        for i in range(1, n):
            for j in range(i + 1, n):
                if rng.random() < spec.peripheral_p:
                    edges.append((i, j, 1.0))
        return build_graph(edges, extra_nodes=range(n))
    raise AssertionError(f"unhandled model {model!r}")


@dataclass(frozen=True)
class CovertSpec:
    """Covert-core benchmark parameters.

    round(corrupt_fraction * n) nodes form n_groups dense blocks
    (pairwise edge probability p_intra_corrupt); the first
    hierarchy_levels members of each block are leaders adjacent to the
    whole block. Honest pairs connect with p_background; every other
    pair (corrupt-honest and cross-block corrupt) with p_inter_corrupt.
    Edge weights are Binomial(weight_trials, weight_p) resampled away
    from zero; winner flags are Bernoulli per role.
    """

    n: int = 100
    corrupt_fraction: float = 0.10
    n_groups: int = 2
    hierarchy_levels: int = 1
    p_intra_corrupt: float = 0.8
    p_inter_corrupt: float = 0.1
    p_background: float = 0.05
    weight_trials: int = 10
    weight_p: float = 0.3
    win_rate_corrupt: float = 0.9
    win_rate_honest: float = 0.3
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("covert benchmark needs n >= 2")
        if not 0.0 <= self.corrupt_fraction <= 1.0:
            raise ValueError("corrupt_fraction must be in [0, 1]")
        if self.n_groups < 1:
            raise ValueError("n_groups must be at least 1")
        if self.hierarchy_levels < 0:
            raise ValueError("hierarchy_levels must be nonnegative")
        for name, val in (("p_intra_corrupt", self.p_intra_corrupt),
                          ("p_inter_corrupt", self.p_inter_corrupt),
                          ("p_background", self.p_background),
                          ("win_rate_corrupt", self.win_rate_corrupt),
                          ("win_rate_honest", self.win_rate_honest)):
            if not 0.0 <= val <= 1.0:
                raise ValueError(f"{name} must be in [0, 1]")
        if self.weight_trials < 1:
            raise ValueError("weight_trials must be at least 1")
        if not 0.0 < self.weight_p <= 1.0:
            raise ValueError("weight_p must be in (0, 1]")


@dataclass(frozen=True)
class LabeledNetwork:
    """Generated graph plus its ground-truth corrupt node set."""

    graph: Graph
    corrupt: frozenset


def gen_covert(spec: CovertSpec) -> LabeledNetwork:
    """Draw a labeled covert-core network, deterministic per seed."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    n_corrupt = round(spec.corrupt_fraction * n)
    shuffled = rng.permutation(n)
    corrupt_ids = shuffled[:n_corrupt]

    label = np.full(n, -1, dtype=np.int64)  # block index per node, -1 honest
    block_members: list[np.ndarray] = []
    if n_corrupt:
        splits = np.array_split(corrupt_ids, spec.n_groups)
        for b, members in enumerate(splits):
            label[members] = b
            block_members.append(members)

    l1 = label[:, None]
    l2 = label[None, :]
    same_block = (l1 == l2) & (l1 >= 0)
    both_honest = (l1 < 0) & (l2 < 0)
    pair_p = np.where(same_block, spec.p_intra_corrupt,
                      np.where(both_honest, spec.p_background, spec.p_inter_corrupt))
    upper = np.triu(np.ones((n, n), dtype=bool), k=1)
    adj = upper & (rng.random((n, n)) < pair_p)

    for members in block_members:
        for lead in members[: spec.hierarchy_levels]:
            others = members[members != lead]
            if len(others):
                adj[np.minimum(lead, others), np.maximum(lead, others)] = True

    rows, cols = np.nonzero(adj)
    weights = rng.binomial(spec.weight_trials, spec.weight_p, size=len(rows))
    while True:
        zero = weights == 0
        if not zero.any():
            break
        weights[zero] = rng.binomial(spec.weight_trials, spec.weight_p, int(zero.sum()))

    corrupt_mask = label >= 0
    win_p = np.where(corrupt_mask, spec.win_rate_corrupt, spec.win_rate_honest)
    winners = rng.random(n) < win_p

    node_weight = np.zeros(n, dtype=np.int64)
    np.add.at(node_weight, rows, weights)
    np.add.at(node_weight, cols, weights)

    g = build_graph(
        ((int(u), int(v), float(w)) for u, v, w in zip(rows, cols, weights)),
        node_weights={int(v): int(node_weight[v]) for v in range(n)},
        winners={int(v): bool(winners[v]) for v in range(n)},
        extra_nodes=range(n),
    )
    return LabeledNetwork(graph=g, corrupt=frozenset(int(v) for v in corrupt_ids))


def grow_partial(net: LabeledNetwork, fractions: Sequence[float], seed: int = 0) -> list[Graph]:
    """Nested induced subgraphs along a seeded uniform node order.

    Fractions must be strictly ascending and in (0, 1]; the subset at a
    smaller fraction is contained in every later one, and fraction 1.0
    returns the full vertex set.
    """
    if not fractions:
        raise ValueError("fractions must be nonempty")
    prev = 0.0
    for f in fractions:
        if not prev < f <= 1.0:
            raise ValueError("fractions must be strictly ascending in (0, 1]")
        prev = f
    g = net.graph
    rng = np.random.default_rng(seed)
    order = [g.node_ids[i] for i in rng.permutation(g.n)]
    out = []
    for f in fractions:
        size = max(1, round(f * g.n))
        out.append(induced_subgraph(g, order[:size]))
    return out
