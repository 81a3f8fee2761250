"""Pairwise structural dissimilarity of graphs on a [0, 1] scale.

The measure blends three views of a graph: the node-averaged hop
distance distribution, the spread of the per-node distance
distributions (network node dispersion), and the shape of the
alpha-centrality distribution of the graph and of its complement.
Each view enters through the square root of a normalized
Jensen-Shannon divergence, so the total is a pseudo-metric bounded by
the weight sum.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import identity as sparse_identity
from scipy.sparse.linalg import splu
from scipy.special import xlogy

from .graph import Graph, _DENSE_LIMIT, complement, distance_profile

LN2 = math.log(2.0)

__all__ = [
    "DissimilarityWeights",
    "DissimilarityResult",
    "DEFAULT_WEIGHTS",
    "TOPOLOGY_WEIGHTS",
    "entropy",
    "jensen_shannon",
    "node_dispersion",
    "nnd",
    "alpha_centrality_distribution",
    "GraphFeatures",
    "graph_features",
    "d_dissimilarity",
    "d_from_features",
    "pairwise_dissimilarity",
]


def entropy(p: np.ndarray) -> float:
    """Shannon entropy in nats with the 0 * log 0 = 0 convention."""
    return float(-xlogy(p, p).sum())


def _rows_entropy(mat: np.ndarray) -> np.ndarray:
    return -xlogy(mat, mat).sum(axis=1)


def _jsd(stacked: np.ndarray) -> float:
    """Jensen-Shannon divergence of the rows (no input validation)."""
    js = entropy(stacked.mean(axis=0)) - float(_rows_entropy(stacked).mean())
    return max(js, 0.0)


def _pad_rows(vectors: list[np.ndarray]) -> np.ndarray:
    width = max(len(v) for v in vectors)
    out = np.zeros((len(vectors), width))
    for i, v in enumerate(vectors):
        out[i, : len(v)] = v
    return out


def jensen_shannon(distributions) -> float:
    """JSD (natural log) of two or more probability vectors.

    Vectors of different lengths are zero-padded on the right to a
    common support. Raises ValueError unless every vector sums to
    1 within 1e-9.
    """
    vecs = [np.asarray(v, dtype=float) for v in distributions]
    if len(vecs) < 2:
        raise ValueError("jensen_shannon needs at least two distributions")
    for i, v in enumerate(vecs):
        if v.ndim != 1:
            raise ValueError(f"distribution {i} is not a vector")
        if abs(float(v.sum()) - 1.0) > 1e-9:
            raise ValueError(f"distribution {i} sums to {float(v.sum())!r}, not 1")
        if (v < 0).any():
            raise ValueError(f"distribution {i} has negative entries")
    return _jsd(_pad_rows(vecs))


def _jsd2(a: np.ndarray, b: np.ndarray) -> float:
    """Two-vector JSD fast path for already-normalized internal vectors."""
    if len(a) != len(b):
        width = max(len(a), len(b))
        aa = np.zeros(width)
        aa[: len(a)] = a
        bb = np.zeros(width)
        bb[: len(b)] = b
        a, b = aa, bb
    js = entropy((a + b) / 2.0) - (entropy(a) + entropy(b)) / 2.0
    return max(js, 0.0)


def node_dispersion(per_node: np.ndarray, diameter: int) -> float:
    """Network node dispersion: JSD of per-node distance distributions
    normalized by log(diameter + 1). Zero for edgeless graphs.
    """
    if diameter <= 0:
        return 0.0
    val = _jsd(per_node) / math.log(diameter + 1.0)
    return min(max(val, 0.0), 1.0)


def nnd(profile) -> float:
    """Network node dispersion of a DistanceProfile."""
    return node_dispersion(profile.per_node, profile.diameter)


def alpha_centrality_distribution(
    g: Graph,
    attenuation: float | None = None,
    exogenous: np.ndarray | None = None,
) -> np.ndarray:
    """Alpha-centrality values as a sorted-descending probability vector.

    Solves x = attenuation * A x + exogenous on the binary adjacency;
    defaults are attenuation 1/N and a uniform exogenous term 1/N, which
    keeps the system nonsingular for every simple graph. The solution is
    normalized to sum 1 and sorted descending so the result is invariant
    under node relabeling.
    """
    n = g.n
    if n == 0:
        return np.zeros(0)
    alpha = (1.0 / n) if attenuation is None else float(attenuation)
    e = np.full(n, 1.0 / n) if exogenous is None else np.asarray(exogenous, dtype=float)
    if e.shape != (n,):
        raise ValueError("exogenous vector length must equal node count")
    if n <= _DENSE_LIMIT:
        x = np.linalg.solve(np.eye(n) - alpha * g.adjacency, e)
    else:
        lu = splu((sparse_identity(n, format="csc") - alpha * g.adjacency_csr.tocsc()))
        x = lu.solve(e)
    total = float(x.sum())
    if total <= 0:
        raise ValueError("alpha-centrality vector does not normalize")
    return np.sort(x / total)[::-1]


def _complement_centrality(g: Graph, attenuation: float | None = None) -> np.ndarray:
    """Alpha-centrality distribution of the complement graph.

    For large graphs the complement is dense, so instead of
    materializing it the solve uses the rank-one structure
    A_comp = J - I - A and a Sherman-Morrison update on the sparse
    system M = (1 + a) I + a A.
    """
    n = g.n
    alpha = (1.0 / n) if attenuation is None else float(attenuation)
    if n <= _DENSE_LIMIT:
        if n == 0:
            return np.zeros(0)
        a_comp = 1.0 - np.eye(n) - g.adjacency
        x = np.linalg.solve(np.eye(n) - alpha * a_comp, np.full(n, 1.0 / n))
        total = float(x.sum())
        if total <= 0:
            raise ValueError("alpha-centrality vector does not normalize")
        return np.sort(x / total)[::-1]
    e = np.full(n, 1.0 / n)
    ones = np.ones(n)
    m = ((1.0 + alpha) * sparse_identity(n, format="csc")
         + alpha * g.adjacency_csr.tocsc())
    lu = splu(m)
    y = lu.solve(e)
    z = lu.solve(ones)
    denom = 1.0 - alpha * float(ones @ z)
    if abs(denom) < 1e-12:
        return alpha_centrality_distribution(complement(g), attenuation)
    x = y + z * (alpha * float(ones @ y) / denom)
    total = float(x.sum())
    if total <= 0:
        raise ValueError("alpha-centrality vector does not normalize")
    return np.sort(x / total)[::-1]


@dataclass(frozen=True)
class DissimilarityWeights:
    """Weights of the three dissimilarity terms; must sum to 1."""

    w1: float = 0.45
    w2: float = 0.45
    w3: float = 0.10

    def __post_init__(self):
        for w in (self.w1, self.w2, self.w3):
            if w < 0:
                raise ValueError("dissimilarity weights must be nonnegative")
        if abs(self.w1 + self.w2 + self.w3 - 1.0) > 1e-12:
            raise ValueError("dissimilarity weights must sum to 1")


DEFAULT_WEIGHTS = DissimilarityWeights()
#: Centrality term disabled; deterministic under any centrality convention.
TOPOLOGY_WEIGHTS = DissimilarityWeights(0.5, 0.5, 0.0)


@dataclass(frozen=True)
class GraphFeatures:
    """Cached per-graph ingredients of the dissimilarity measure."""

    n: int
    mu: np.ndarray
    nnd: float
    centrality: np.ndarray | None
    centrality_complement: np.ndarray | None


def graph_features(g: Graph, with_centrality: bool = True) -> GraphFeatures:
    """Precompute the per-graph terms used by d_from_features.

    Requires n >= 2 (a distance profile must exist).
    """
    prof = distance_profile(g)
    cent = comp = None
    if with_centrality:
        cent = alpha_centrality_distribution(g)
        comp = _complement_centrality(g)
    return GraphFeatures(n=g.n, mu=prof.mu, nnd=prof.nnd,
                         centrality=cent, centrality_complement=comp)


@dataclass(frozen=True)
class DissimilarityResult:
    """Total dissimilarity and the weighted per-term contributions."""

    value: float
    mu_term: float
    nnd_term: float
    centrality_term: float


def d_from_features(
    f1: GraphFeatures,
    f2: GraphFeatures,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> DissimilarityResult:
    t1 = weights.w1 * math.sqrt(_jsd2(f1.mu, f2.mu) / LN2)
    t2 = weights.w2 * abs(math.sqrt(f1.nnd) - math.sqrt(f2.nnd))
    t3 = 0.0
    if weights.w3 > 0:
        if f1.centrality is None or f2.centrality is None:
            raise ValueError("features lack centrality terms but w3 > 0")
        t3 = (weights.w3 / 2.0) * (
            math.sqrt(_jsd2(f1.centrality, f2.centrality) / LN2)
            + math.sqrt(_jsd2(f1.centrality_complement, f2.centrality_complement) / LN2)
        )
    return DissimilarityResult(value=t1 + t2 + t3, mu_term=t1, nnd_term=t2,
                               centrality_term=t3)


def d_dissimilarity(
    g1: Graph,
    g2: Graph,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> DissimilarityResult:
    """Structural dissimilarity of two graphs (symmetric, in [0, 1]).

    Graphs of different orders are comparable: distribution vectors are
    zero-padded on the right to a common support.
    """
    with_cent = weights.w3 > 0
    return d_from_features(
        graph_features(g1, with_centrality=with_cent),
        graph_features(g2, with_centrality=with_cent),
        weights,
    )


def pairwise_dissimilarity(
    graphs,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> np.ndarray:
    """Symmetric matrix of pairwise dissimilarities (features computed once)."""
    feats = [graph_features(g, with_centrality=weights.w3 > 0) for g in graphs]
    k = len(feats)
    out = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            out[i, j] = out[j, i] = d_from_features(feats[i], feats[j], weights).value
    return out
