"""Triangle-area asymmetry coefficient and edge activation models.

A split of a graph's edges into active and inactive parts gives three
pairwise dissimilarities: base vs active, base vs inactive, active vs
inactive. Treated as triangle side lengths, the ratio of the triangle
area to the area of the equilateral triangle with the same perimeter
measures how asymmetric the split is structurally: 1 only for the
equilateral case, 0 for degenerate (collinear) triangles.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .dissimilarity import (
    DEFAULT_WEIGHTS,
    DissimilarityWeights,
    GraphFeatures,
    d_from_features,
    graph_features,
)
from .graph import Graph, canonical_edge, edge_betweenness, subgraph_with_edges


class DegenerateTriangleWarning(UserWarning):
    """Raised when side lengths violate the triangle inequality."""


def heron_coefficient(d12: float, d13: float, d23: float) -> float:
    """Normalized triangle area from three side lengths, in [0, 1].

    With semiperimeter P, returns 3 * sqrt(3 P (P-d12)(P-d13)(P-d23)) / P**2,
    i.e. the triangle area divided by the equilateral area at equal
    perimeter. All-zero sides give 0. A negative radicand is clamped to
    0; if the triangle inequality is violated by more than 1e-9 a
    DegenerateTriangleWarning is emitted as well.
    """
    sides = sorted((float(d12), float(d13), float(d23)))
    for d in sides:
        if not math.isfinite(d) or d < 0:
            raise ValueError(f"side lengths must be finite and nonnegative, got {d!r}")
    p = sum(sides) / 2.0
    if p == 0.0:
        return 0.0
    # scale-free form 3 sqrt(3 g1 g2 g3) with g = (P - d) / P avoids the
    # underflow of P (P-d12)(P-d13)(P-d23) for very short sides
    f1, f2, f3 = (p - d for d in sides)
    radicand = 3.0 * (f1 / p) * (f2 / p) * (f3 / p)
    if radicand <= 0.0:
        if min(f1, f2, f3) < -1e-9:
            warnings.warn(
                f"triangle inequality violated for sides {sides}; returning 0",
                DegenerateTriangleWarning,
                stacklevel=2,
            )
        return 0.0
    return min(3.0 * math.sqrt(radicand), 1.0)


@dataclass(frozen=True)
class EdgePartition:
    """A base graph with its edges split into active and inactive sets.

    Both derived subgraphs keep the full vertex set of the base, so the
    three graphs stay directly comparable.
    """

    base: Graph
    active: frozenset

    def __post_init__(self):
        active = frozenset(canonical_edge(u, v) for (u, v) in self.active)
        object.__setattr__(self, "active", active)
        stray = active - self.base.edge_set
        if stray:
            raise ValueError(f"active edges {sorted(map(str, stray))} not in base graph")

    @property
    def inactive(self) -> frozenset:
        return self.base.edge_set - self.active

    def active_graph(self) -> Graph:
        return subgraph_with_edges(self.base, self.active)

    def inactive_graph(self) -> Graph:
        return subgraph_with_edges(self.base, self.inactive)


@dataclass(frozen=True)
class ActivationConfig:
    """How to draw an active edge subset.

    mode "uniform": each edge is active independently with probability p.
    mode "betweenness": exactly ceil(active_fraction * m) edges are drawn
    without replacement with sampling weights b_e ** gamma, where b_e is
    shortest-path edge betweenness. gamma = 0 reduces to a uniform draw
    of fixed size; positive gamma concentrates activity on structurally
    central edges, negative gamma on peripheral ones.
    """

    mode: str = "uniform"
    p: float | None = None
    gamma: float | None = None
    active_fraction: float = 0.10
    seed: int = 0

    def __post_init__(self):
        if self.mode not in ("uniform", "betweenness"):
            raise ValueError(f"unknown activation mode {self.mode!r}")
        if self.mode == "uniform":
            if self.p is None or not 0.0 <= self.p <= 1.0:
                raise ValueError("uniform mode needs p in [0, 1]")
        else:
            if self.gamma is None or not math.isfinite(self.gamma):
                raise ValueError("betweenness mode needs a finite gamma")
            if not 0.0 < self.active_fraction <= 1.0:
                raise ValueError("active_fraction must be in (0, 1]")


def activate(g: Graph, config: ActivationConfig) -> EdgePartition:
    """Draw an active edge subset of g according to config (seeded)."""
    if g.m == 0:
        raise ValueError("cannot activate edges of an empty edge set")
    rng = np.random.default_rng(config.seed)
    pairs = [(u, v) for u, v, _ in g.edges]
    if config.mode == "uniform":
        mask = rng.random(g.m) < config.p
        chosen = [e for e, hit in zip(pairs, mask) if hit]
        return EdgePartition(base=g, active=frozenset(chosen))

    k = math.ceil(config.active_fraction * g.m)
    bet = edge_betweenness(g)
    b = np.array([bet[e] for e in pairs])
    gamma = float(config.gamma)
    with np.errstate(divide="ignore"):
        w = np.power(b, gamma)
    zero = b == 0
    if zero.any():
        positive = w[~zero]
        if gamma < 0 and positive.size:
            # untraversed edges count as maximally peripheral
            w[zero] = positive.max()
        elif not positive.size:
            w[:] = 1.0
    total = w.sum()
    if total <= 0 or not np.isfinite(total):
        raise ValueError("betweenness sampling weights do not normalize")
    idx = rng.choice(g.m, size=k, replace=False, p=w / total)
    chosen = [pairs[i] for i in idx]
    return EdgePartition(base=g, active=frozenset(chosen))


@dataclass(frozen=True)
class PartitionHic:
    """Dissimilarity triangle of a partition and its asymmetry coefficient.

    d12 = base vs active, d13 = base vs inactive, d23 = active vs inactive.
    """

    d12: float
    d13: float
    d23: float
    hic: float

    def as_dict(self) -> dict:
        return {"d12": self.d12, "d13": self.d13, "d23": self.d23, "hic": self.hic}


def hic_of_partition(
    partition: EdgePartition,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
    base_features: GraphFeatures | None = None,
) -> PartitionHic:
    """Asymmetry coefficient of an edge partition.

    Degenerate splits (all edges active, or none) produce a collinear
    triangle and therefore 0, with no special casing. ``base_features`` lets
    callers amortize the base-graph terms across many partitions of the
    same graph.
    """
    with_cent = weights.w3 > 0
    fb = base_features if base_features is not None else graph_features(
        partition.base, with_centrality=with_cent)
    fa = graph_features(partition.active_graph(), with_centrality=with_cent)
    fi = graph_features(partition.inactive_graph(), with_centrality=with_cent)
    d12 = d_from_features(fb, fa, weights).value
    d13 = d_from_features(fb, fi, weights).value
    d23 = d_from_features(fa, fi, weights).value
    return PartitionHic(d12=d12, d13=d13, d23=d23,
                        hic=heron_coefficient(d12, d13, d23))
