"""Sliding-window series, anomaly flags and a participation null model.

Windows are calendar-month intervals, half-open on the right. Each
window's co-bidding graph is scored by the asymmetry coefficient of a
single backbone step, the resulting series is screened with trailing
z-scores, and individual graphs can be tested against a null that keeps
every company's participation volume but randomizes who meets whom.
"""
from __future__ import annotations

import calendar
import datetime
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .backbone import DissolvedError, optimal_alpha
from .bids import BidRecord, cobid_network
from .dissimilarity import DEFAULT_WEIGHTS, DissimilarityWeights
from .graph import Graph, build_graph, components, structural_metrics


def add_months(d: datetime.date, months: int) -> datetime.date:
    """Shift a date by whole calendar months, clamping the day."""
    total = d.year * 12 + (d.month - 1) + months
    year, month0 = divmod(total, 12)
    day = min(d.day, calendar.monthrange(year, month0 + 1)[1])
    return datetime.date(year, month0 + 1, day)


@dataclass(frozen=True)
class WindowSpec:
    """Sliding-window geometry in months (trimester defaults).

    When start/end are omitted they derive from the records: start
    snaps to the first day of the earliest record's month, end is the
    day after the latest record.
    """

    window_length: int = 3
    stride: int = 3
    start: datetime.date | None = None
    end: datetime.date | None = None

    def __post_init__(self):
        if self.window_length < 1 or self.stride < 1:
            raise ValueError("window_length and stride must be at least 1 month")
        if self.start and self.end and self.start >= self.end:
            raise ValueError("window range start must precede end")


@dataclass(frozen=True)
class Window:
    """One window's bounds ([start, end)) and its co-bidding graph."""

    start: datetime.date
    end: datetime.date
    graph: Graph


def window_series(
    records: Sequence[BidRecord],
    spec: WindowSpec = WindowSpec(),
    item: str | None = None,
) -> list[Window]:
    """Co-bidding graphs over sliding windows (possibly empty graphs).

    Window k covers [start + k * stride, start + k * stride + length)
    in calendar months; windows are generated while their start lies
    before the range end.
    """
    if item is not None:
        records = [r for r in records if r.item_code == item]
    start = spec.start
    end = spec.end
    if start is None or end is None:
        if not records:
            raise ValueError("cannot derive a window range from zero records")
        dates = [r.date for r in records]
        if start is None:
            start = min(dates).replace(day=1)
        if end is None:
            end = max(dates) + datetime.timedelta(days=1)
    out: list[Window] = []
    k = 0
    while True:
        w_start = add_months(start, k * spec.stride)
        if w_start >= end:
            break
        w_end = add_months(w_start, spec.window_length)
        out.append(Window(start=w_start, end=w_end,
                          graph=cobid_network(records, date_range=(w_start, w_end))))
        k += 1
    return out


def single_step_hic(g: Graph, weights: DissimilarityWeights = DEFAULT_WEIGHTS) -> float:
    """Peak asymmetry of one backbone step; 0 for degenerate graphs."""
    if g.n < 2 or g.m == 0:
        return 0.0
    try:
        return optimal_alpha(g, weights=weights).hic
    except DissolvedError:
        return 0.0


def hic_series(
    graphs: Iterable[Graph],
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> list[float]:
    """Single-step backbone asymmetry per window graph."""
    return [single_step_hic(g, weights) for g in graphs]


def window_stats(graphs: Iterable[Graph]) -> dict[str, tuple[float, ...]]:
    """Auxiliary per-window series: order, size, density, clustering, components."""
    nodes, edges, density, clustering, comps = [], [], [], [], []
    for g in graphs:
        nodes.append(float(g.n))
        edges.append(float(g.m))
        density.append(2.0 * g.m / (g.n * (g.n - 1)) if g.n >= 2 else 0.0)
        clustering.append(structural_metrics(g).mean_clustering)
        comps.append(float(len(components(g))))
    return {
        "nodes": tuple(nodes),
        "edges": tuple(edges),
        "density": tuple(density),
        "clustering": tuple(clustering),
        "components": tuple(comps),
    }


@dataclass(frozen=True)
class AnomalySeries:
    """Trailing z-scores of a series and the flags they raise.

    The first ``trailing`` entries have no baseline: their z is NaN and
    they are never flagged. A baseline with (sample) std below 1e-12
    yields z = 0.
    """

    values: tuple[float, ...]
    baseline_mean: tuple[float, ...]
    baseline_std: tuple[float, ...]
    z: tuple[float, ...]
    flagged: tuple[bool, ...]
    trailing: int
    threshold: float


def anomaly_scores(
    series: Sequence[float],
    trailing: int = 4,
    threshold: float = 1.96,
) -> AnomalySeries:
    """Flag entries deviating from their trailing-window baseline.

    z_t = (x_t - mean(x_{t-k..t-1})) / std(x_{t-k..t-1}) with k =
    ``trailing`` and sample (ddof=1) standard deviation; |z| > threshold
    flags the entry.
    """
    if trailing < 1:
        raise ValueError("trailing must be at least 1")
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    x = [float(v) for v in series]
    mean_out, std_out, z_out, flag_out = [], [], [], []
    for t in range(len(x)):
        if t < trailing:
            mean_out.append(float("nan"))
            std_out.append(float("nan"))
            z_out.append(float("nan"))
            flag_out.append(False)
            continue
        base = np.array(x[t - trailing: t])
        mu = float(base.mean())
        sd = float(base.std(ddof=1)) if trailing > 1 else 0.0
        if sd < 1e-12:
            z = 0.0
        else:
            z = (x[t] - mu) / sd
        mean_out.append(mu)
        std_out.append(sd)
        z_out.append(z)
        flag_out.append(abs(z) > threshold)
    return AnomalySeries(
        values=tuple(x),
        baseline_mean=tuple(mean_out),
        baseline_std=tuple(std_out),
        z=tuple(z_out),
        flagged=tuple(flag_out),
        trailing=trailing,
        threshold=threshold,
    )


def poisson_null_graph(
    node_weights: Mapping,
    total_biddings: int,
    seed: int | None = 0,
    rng: np.random.Generator | None = None,
) -> Graph:
    """Draw a co-bidding graph under the independent-participation null.

    Companies x and y with participation counts n_x, n_y out of N_b
    total biddings co-occur Binomial(N_b, (n_x/N_b) * (n_y/N_b)) times;
    positive counts become edge weights. Node weights carry over.
    """
    ids = sorted(node_weights)
    w = np.array([node_weights[v] for v in ids], dtype=float)
    if total_biddings < 1:
        raise ValueError("total_biddings must be at least 1")
    if w.size and w.max() > total_biddings:
        raise ValueError("total_biddings must be at least the largest node weight")
    if rng is None:
        rng = np.random.default_rng(seed)
    rates = w / total_biddings
    pair_p = np.triu(np.outer(rates, rates), k=1)
    counts = rng.binomial(total_biddings, pair_p)
    counts = np.triu(counts, k=1)
    rows, cols = np.nonzero(counts)
    return build_graph(
        ((ids[u], ids[v], float(counts[u, v])) for u, v in zip(rows, cols)),
        node_weights={v: int(node_weights[v]) for v in ids},
        extra_nodes=ids,
    )


@dataclass(frozen=True)
class NullTestResult:
    """Observed single-step asymmetry against its participation null."""

    real_hic: float
    null_mean: float
    null_std: float
    fraction: float
    p_value: float
    significant: bool
    samples: int
    null_values: tuple[float, ...]


def poisson_null_test(
    g: Graph,
    total_biddings: int,
    samples: int = 200,
    seed: int = 0,
    significance_level: float = 0.05,
    weights: DissimilarityWeights = DEFAULT_WEIGHTS,
) -> NullTestResult:
    """Monte Carlo rank test of a graph's single-step asymmetry.

    Draws ``samples`` null graphs sharing g's node participation
    weights, scores each like the observed graph, and returns the
    two-sided rank p-value (r + 1) / (B + 1). ``fraction`` is the
    observed value over the null mean (NaN when the null mean is 0).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    node_w = dict(zip(g.node_ids, g.node_weights))
    rng = np.random.default_rng(seed)
    real = single_step_hic(g, weights)
    nulls = np.array([
        single_step_hic(poisson_null_graph(node_w, total_biddings, rng=rng), weights)
        for _ in range(samples)
    ])
    hi = int((nulls >= real).sum())
    lo = int((nulls <= real).sum())
    p = min(1.0, 2.0 * min(hi + 1, lo + 1) / (samples + 1))
    null_mean = float(nulls.mean())
    return NullTestResult(
        real_hic=real,
        null_mean=null_mean,
        null_std=float(nulls.std(ddof=1)) if samples > 1 else 0.0,
        fraction=(real / null_mean) if null_mean > 0 else float("nan"),
        p_value=p,
        significant=p <= significance_level,
        samples=samples,
        null_values=tuple(float(v) for v in nulls),
    )
