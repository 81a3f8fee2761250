"""Significance filtering of weighted edges and backbone extraction.

Edge significance follows the disparity-filter null: an edge (i, j) of
weight w seen from endpoint i with degree k and strength s scores
(1 - w/s) ** (k - 1), the probability that a uniformly split strength
would put at least this much weight on one of k incident edges. The
edge keeps the more significant (smaller) of its two endpoint scores.

A backbone step chooses the significance threshold that maximizes the
asymmetry coefficient of the induced active/inactive split; iterating
on the surviving active subgraph with a non-increasing threshold budget
peels the network down to its most significant core.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dissimilarity import DEFAULT_WEIGHTS, DissimilarityWeights, GraphFeatures, graph_features
from .graph import Graph, drop_isolated
from .heron import EdgePartition, PartitionHic, hic_of_partition


class DissolvedError(Exception):
    """No admissible threshold candidate: the network has dissolved."""


def disparity_significance(g: Graph) -> dict[tuple, float]:
    """Two-sided disparity-filter significance per edge, in [0, 1].

    Degree-1 endpoints contribute the trivial value 1.0. Smaller values
    mean the edge is less compatible with a uniform local null.
    """
    if g.m == 0:
        return {}
    pairs = g.edge_index_pairs
    w = g.edge_weights
    deg = g.degrees
    s = g.strengths

    def side(endpoint_idx: np.ndarray) -> np.ndarray:
        k = deg[endpoint_idx]
        frac = w / s[endpoint_idx]
        out = np.ones(len(w))
        active = k > 1
        # exp((k-1) log1p(-w/s)) is (1-w/s)**(k-1) without underflow trouble
        out[active] = np.exp((k[active] - 1) * np.log1p(-frac[active]))
        return out

    alpha = np.minimum(side(pairs[:, 0]), side(pairs[:, 1]))
    alpha = np.clip(alpha, 0.0, 1.0)
    return {(u, v): float(a) for (u, v, _), a in zip(g.edges, alpha)}


def split_at_alpha(g: Graph, significance: dict[tuple, float], alpha: float) -> EdgePartition:
    """Partition edges: active iff significance < alpha (strict)."""
    missing = g.edge_set - set(significance)
    if missing:
        raise ValueError("significance map does not cover every edge")
    active = frozenset(e for e in g.edge_set if significance[e] < alpha)
    return EdgePartition(base=g, active=active)


@dataclass(frozen=True)
class BackboneStep:
    """One threshold search: chosen alpha, the split, and its triangle."""

    alpha: float
    triangle: PartitionHic
    active: Graph
    inactive: Graph
    winner_fraction: float
    candidates_evaluated: int

    @property
    def hic(self) -> float:
        return self.triangle.hic


def _winner_fraction(active: Graph) -> float:
    touched = {u for u, v, _ in active.edges} | {v for u, v, _ in active.edges}
    if not touched:
        return 0.0
    idx = active.index
    return sum(1 for v in touched if active.winners[idx[v]]) / len(touched)


def optimal_alpha(
    g: Graph,
    significance: dict[tuple, float] | None = None,
    upper_bound: float = 1.0,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
    base_features: GraphFeatures | None = None,
    max_candidates: int | None = None,
) -> BackboneStep:
    """Exact search for the asymmetry-maximizing significance threshold.

    The coefficient is piecewise constant in alpha, so evaluating the
    distinct observed significance values (plus the upper bound) scans
    every achievable split exactly. Returns the smallest maximizer
    within a 1e-12 tie tolerance. ``max_candidates`` optionally thins
    the candidate list to evenly spaced quantiles (endpoints kept) for
    very large graphs, trading exactness for speed.

    Raises DissolvedError when no observed significance value is at or
    below ``upper_bound`` (every split below the budget would be empty).
    """
    if upper_bound <= 0:
        raise ValueError("upper_bound must be positive")
    sig = disparity_significance(g) if significance is None else significance
    observed = sorted({a for a in sig.values() if a <= upper_bound})
    if not observed:
        raise DissolvedError(
            f"no significance value at or below upper bound {upper_bound!r}")
    candidates = observed if observed[-1] == upper_bound else observed + [upper_bound]
    if max_candidates is not None and len(candidates) > max_candidates:
        pick = np.unique(np.linspace(0, len(candidates) - 1, max_candidates).round().astype(int))
        candidates = [candidates[i] for i in pick]

    fb = base_features if base_features is not None else graph_features(
        g, with_centrality=weights.w3 > 0)
    scored: list[tuple[float, PartitionHic, EdgePartition]] = []
    for cand in candidates:
        part = split_at_alpha(g, sig, cand)
        tri = hic_of_partition(part, weights, base_features=fb)
        scored.append((cand, tri, part))
    best = max(tri.hic for _, tri, _ in scored)
    for cand, tri, part in scored:  # ascending, so first hit is the smallest
        if tri.hic >= best - 1e-12:
            active = part.active_graph()
            return BackboneStep(
                alpha=float(cand),
                triangle=tri,
                active=active,
                inactive=part.inactive_graph(),
                winner_fraction=_winner_fraction(active),
                candidates_evaluated=len(candidates),
            )
    raise AssertionError("unreachable: best candidate must exist")


@dataclass(frozen=True)
class BackboneTrace:
    """Steps of an iterative backbone extraction and why it stopped."""

    steps: tuple[BackboneStep, ...]
    stop_reason: str  # "max-steps" | "dissolved" | "no-positive-hic"


def iterative_backbone(
    g: Graph,
    max_steps: int = 6,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
    max_candidates: int | None = None,
) -> BackboneTrace:
    """Repeated backbone steps with a tightening threshold budget.

    Step 1 searches with upper bound 1. Each later step keeps the
    previous active subgraph, drops isolated nodes, recomputes edge
    significance on it, and searches only at or below the previous
    chosen alpha, so the chosen alphas are non-increasing. Stops when
    max_steps is reached, the step's coefficient is no longer positive,
    or the network dissolves (fewer than 2 nodes, no edges, or no
    candidate under the budget).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    steps: list[BackboneStep] = []
    current = g
    bound = 1.0
    stop_reason = "max-steps"
    for _ in range(max_steps):
        if current.n < 2 or current.m == 0:
            stop_reason = "dissolved"
            break
        try:
            step = optimal_alpha(current, None, bound, weights,
                                 max_candidates=max_candidates)
        except DissolvedError:
            stop_reason = "dissolved"
            break
        steps.append(step)
        if step.hic <= 0.0:
            stop_reason = "no-positive-hic"
            break
        current = drop_isolated(step.active)
        bound = step.alpha
    return BackboneTrace(steps=tuple(steps), stop_reason=stop_reason)
