"""Immutable undirected weighted graphs and structural descriptors.

The graph model is deliberately small: opaque node identifiers, a
nonnegative integer participation weight and a winner flag per node,
and positive aggregated edge weights. Distances, efficiency and the
per-node distance distributions are always computed on the unweighted
skeleton; edge weights only matter to the significance filter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph as _csgraph

NodeId = int | str

_DENSE_LIMIT = 512  # above this, dense N x N linear algebra is avoided


def _id_key(v: NodeId):
    """Sort key giving a deterministic node order for mixed int/str ids."""
    if isinstance(v, bool):
        raise ValueError(f"node id {v!r} must be int or str")
    if isinstance(v, (int, np.integer)):
        return (0, int(v), "")
    return (1, 0, v)


def _check_id(v) -> NodeId:
    if isinstance(v, (int, np.integer)) and not isinstance(v, bool):
        return int(v)
    if isinstance(v, str):
        if not v:
            raise ValueError("node ids must be nonempty")
        return v
    raise ValueError(f"node id {v!r} must be int or str")


def canonical_edge(u: NodeId, v: NodeId) -> tuple[NodeId, NodeId]:
    return (u, v) if _id_key(u) < _id_key(v) else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph with per-node weight and winner flag.

    Instances are immutable; derived quantities (adjacency, hop
    distances) are cached on first use. ``node_ids`` is canonically
    sorted and ``edges`` holds ``(u, v, weight)`` with ``u < v`` in the
    canonical order.
    """

    node_ids: tuple[NodeId, ...]
    node_weights: tuple[int, ...]
    winners: tuple[bool, ...]
    edges: tuple[tuple[NodeId, NodeId, float], ...]

    @property
    def n(self) -> int:
        return len(self.node_ids)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def index(self) -> dict[NodeId, int]:
        return {v: i for i, v in enumerate(self.node_ids)}

    @cached_property
    def edge_index_pairs(self) -> np.ndarray:
        """(m, 2) array of edge endpoints as node positions."""
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        idx = self.index
        return np.array([(idx[u], idx[v]) for u, v, _ in self.edges], dtype=np.int64)

    @cached_property
    def edge_weights(self) -> np.ndarray:
        return np.array([w for _, _, w in self.edges], dtype=float)

    @cached_property
    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        pairs = self.edge_index_pairs
        if len(pairs):
            np.add.at(deg, pairs[:, 0], 1)
            np.add.at(deg, pairs[:, 1], 1)
        return deg

    @cached_property
    def strengths(self) -> np.ndarray:
        """Weighted degree per node."""
        s = np.zeros(self.n, dtype=float)
        pairs = self.edge_index_pairs
        if len(pairs):
            np.add.at(s, pairs[:, 0], self.edge_weights)
            np.add.at(s, pairs[:, 1], self.edge_weights)
        return s

    @cached_property
    def adjacency_csr(self) -> csr_matrix:
        """Binary adjacency in sparse form (skeleton, not weights)."""
        pairs = self.edge_index_pairs
        n = self.n
        if not len(pairs):
            return csr_matrix((n, n))
        rows = np.concatenate([pairs[:, 0], pairs[:, 1]])
        cols = np.concatenate([pairs[:, 1], pairs[:, 0]])
        data = np.ones(len(rows))
        return csr_matrix((data, (rows, cols)), shape=(n, n))

    @cached_property
    def adjacency(self) -> np.ndarray:
        """Dense binary adjacency; only sensible for moderate n."""
        a = np.zeros((self.n, self.n))
        pairs = self.edge_index_pairs
        if len(pairs):
            a[pairs[:, 0], pairs[:, 1]] = 1.0
            a[pairs[:, 1], pairs[:, 0]] = 1.0
        return a

    @cached_property
    def hop_distances(self) -> np.ndarray:
        """All-pairs shortest-path hop counts (np.inf where unreachable).

        Repeated breadth-first search over the unweighted skeleton,
        delegated to scipy's compiled implementation.
        """
        n = self.n
        if n == 0:
            return np.zeros((0, 0))
        if self.m == 0:
            d = np.full((n, n), np.inf)
            np.fill_diagonal(d, 0.0)
            return d
        return _csgraph.shortest_path(self.adjacency_csr, method="auto",
                                      directed=False, unweighted=True)

    @cached_property
    def edge_set(self) -> frozenset[tuple[NodeId, NodeId]]:
        return frozenset((u, v) for u, v, _ in self.edges)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.node_ids)
        g.add_weighted_edges_from(self.edges)
        return g

    def winner_ids(self) -> frozenset[NodeId]:
        return frozenset(v for v, w in zip(self.node_ids, self.winners) if w)


def build_graph(
    edges: Iterable[Sequence],
    node_weights: Mapping[NodeId, int] | None = None,
    winners: Iterable[NodeId] | Mapping[NodeId, bool] | None = None,
    extra_nodes: Iterable[NodeId] = (),
) -> Graph:
    """Assemble a Graph from an edge iterable and optional node attributes.

    Edge items are ``(u, v)`` or ``(u, v, weight)``; parallel duplicates
    are aggregated by weight sum. Nodes mentioned only in ``node_weights``,
    ``winners`` or ``extra_nodes`` are kept as isolated vertices.

    Raises ValueError on self-loops, nonpositive or nonfinite edge
    weights, and negative node weights.
    """
    agg: dict[tuple[NodeId, NodeId], float] = {}
    seen: set[NodeId] = set()
    for item in edges:
        if len(item) == 2:
            u, v = item
            w = 1.0
        elif len(item) == 3:
            u, v, w = item
        else:
            raise ValueError(f"edge {item!r} must be (u, v) or (u, v, weight)")
        u = _check_id(u)
        v = _check_id(v)
        if u == v:
            raise ValueError(f"self-loop on node {u!r} is not allowed")
        w = float(w)
        if not math.isfinite(w) or w <= 0:
            raise ValueError(f"edge ({u!r}, {v!r}) has invalid weight {w!r}")
        key = canonical_edge(u, v)
        agg[key] = agg.get(key, 0.0) + w
        seen.add(u)
        seen.add(v)

    weights_map: dict[NodeId, int] = {}
    if node_weights:
        for v, nw in node_weights.items():
            v = _check_id(v)
            nw = int(nw)
            if nw < 0:
                raise ValueError(f"node weight for {v!r} must be nonnegative")
            weights_map[v] = nw
            seen.add(v)

    winner_map: dict[NodeId, bool] = {}
    if winners is not None:
        if isinstance(winners, Mapping):
            items = winners.items()
        else:
            items = [(v, True) for v in winners]
        for v, flag in items:
            v = _check_id(v)
            winner_map[v] = bool(flag)
            seen.add(v)

    for v in extra_nodes:
        seen.add(_check_id(v))

    ids = tuple(sorted(seen, key=_id_key))
    return Graph(
        node_ids=ids,
        node_weights=tuple(weights_map.get(v, 0) for v in ids),
        winners=tuple(winner_map.get(v, False) for v in ids),
        edges=tuple(
            (u, v, w)
            for (u, v), w in sorted(agg.items(), key=lambda kv: (_id_key(kv[0][0]), _id_key(kv[0][1])))
        ),
    )


def subgraph_with_edges(g: Graph, keep: Iterable[tuple[NodeId, NodeId]]) -> Graph:
    """Same vertex set, edge subset (weights carried over from g)."""
    keep_set = {canonical_edge(u, v) for u, v in keep}
    missing = keep_set - g.edge_set
    if missing:
        raise ValueError(f"edges {sorted(missing, key=lambda e: (_id_key(e[0]), _id_key(e[1])))!r} not in graph")
    return Graph(
        node_ids=g.node_ids,
        node_weights=g.node_weights,
        winners=g.winners,
        edges=tuple(e for e in g.edges if (e[0], e[1]) in keep_set),
    )


def induced_subgraph(g: Graph, nodes: Iterable[NodeId]) -> Graph:
    node_set = set(nodes)
    unknown = node_set - set(g.node_ids)
    if unknown:
        raise ValueError(f"nodes {sorted(unknown, key=_id_key)!r} not in graph")
    keep = [i for i, v in enumerate(g.node_ids) if v in node_set]
    return Graph(
        node_ids=tuple(g.node_ids[i] for i in keep),
        node_weights=tuple(g.node_weights[i] for i in keep),
        winners=tuple(g.winners[i] for i in keep),
        edges=tuple(e for e in g.edges if e[0] in node_set and e[1] in node_set),
    )


def drop_isolated(g: Graph) -> Graph:
    touched = {u for u, v, _ in g.edges} | {v for u, v, _ in g.edges}
    return induced_subgraph(g, touched)


def complement(g: Graph) -> Graph:
    """Complement on the same vertex set; complement edges carry weight 1."""
    present = g.edge_set
    ids = g.node_ids
    comp = [
        (ids[i], ids[j], 1.0)
        for i in range(len(ids))
        for j in range(i + 1, len(ids))
        if (ids[i], ids[j]) not in present and (ids[j], ids[i]) not in present
    ]
    return Graph(node_ids=ids, node_weights=g.node_weights, winners=g.winners,
                 edges=tuple(comp))


@dataclass(frozen=True)
class DistanceProfile:
    """Per-node hop-distance distributions of a graph.

    ``per_node[i]`` is the probability vector over distance bins
    1..(N-1) followed by a final unreachable bin; each row sums to 1.
    ``mu`` is the node-averaged vector and ``diameter`` the largest
    finite distance (0 when the graph has no edges).
    """

    per_node: np.ndarray
    mu: np.ndarray
    diameter: int
    nnd: float


def distance_profile(g: Graph) -> DistanceProfile:
    """Distance distributions, averaged vector and dispersion of g.

    Requires at least two nodes.
    """
    n = g.n
    if n < 2:
        raise ValueError("distance profile needs at least 2 nodes")
    dm = g.hop_distances
    finite = np.isfinite(dm)
    mask = finite & (dm > 0)
    rows, cols = np.nonzero(mask)
    dist = dm[rows, cols].astype(np.int64)
    # one flat bincount fills every (node, distance) bin at once
    counts = np.bincount(rows * n + (dist - 1), minlength=n * n).reshape(n, n).astype(float)
    counts[:, n - 1] = (n - 1) - counts[:, : n - 1].sum(axis=1)
    per_node = counts / (n - 1)
    mu = per_node.mean(axis=0)
    off = dm[finite & (dm > 0)]
    diameter = int(off.max()) if off.size else 0

    from .dissimilarity import node_dispersion  # local import breaks the module cycle

    return DistanceProfile(per_node=per_node, mu=mu, diameter=diameter,
                           nnd=node_dispersion(per_node, diameter))


@dataclass(frozen=True)
class MetricBundle:
    """Classical whole-graph summary statistics."""

    global_efficiency: float
    mean_clustering: float
    modularity: float | None
    degree_sequence: tuple[int, ...]


def global_efficiency(g: Graph) -> float:
    """Mean inverse hop distance over ordered node pairs (0 when n < 2)."""
    n = g.n
    if n < 2:
        return 0.0
    dm = g.hop_distances
    mask = np.isfinite(dm) & (dm > 0)
    total = float((1.0 / dm[mask]).sum())
    return total / (n * (n - 1))


def structural_metrics(g: Graph, communities: Sequence[Iterable[NodeId]] | None = None) -> MetricBundle:
    """Efficiency, mean clustering, optional modularity, degree sequence.

    Modularity is computed only when a community assignment is supplied;
    it is evaluated on the unweighted skeleton.
    """
    gx = g.to_networkx()
    clustering = float(nx.average_clustering(gx)) if g.n else 0.0
    mod = None
    if communities is not None:
        mod = float(nx.community.modularity(gx, communities, weight=None))
    return MetricBundle(
        global_efficiency=global_efficiency(g),
        mean_clustering=clustering,
        modularity=mod,
        degree_sequence=tuple(sorted((int(d) for d in g.degrees), reverse=True)),
    )


def edge_betweenness(g: Graph) -> dict[tuple[NodeId, NodeId], float]:
    """Shortest-path edge betweenness with fractional split among ties.

    Unnormalized: scores sum to the total of pairwise distances over
    reachable unordered pairs.
    """
    raw = nx.edge_betweenness_centrality(g.to_networkx(), normalized=False, weight=None)
    return {canonical_edge(u, v): float(b) for (u, v), b in raw.items()}


def components(g: Graph) -> tuple[frozenset[NodeId], ...]:
    """Connected components, largest first (ties by smallest member id)."""
    n = g.n
    if n == 0:
        return ()
    _, labels = _csgraph.connected_components(g.adjacency_csr, directed=False)
    groups: dict[int, set[NodeId]] = {}
    for v, lab in zip(g.node_ids, labels):
        groups.setdefault(int(lab), set()).add(v)
    comps = sorted(groups.values(), key=lambda c: (-len(c), min(_id_key(v) for v in c)))
    return tuple(frozenset(c) for c in comps)
