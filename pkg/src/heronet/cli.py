"""Command line interface.

Commands: gen, dissim, distmat, hic, backbone, bench, temporal, nulltest.
Global flags: --seed, --config FILE (JSON defaults), --out PATH,
--format json|csv. With --out pointing at a directory every command
writes its JSON report, a CSV series when one exists, and rendered PNG
figures side by side; pointing --out at a *.json or *.csv file writes
exactly that file (figures land next to it). Exit code 0 on success,
2 on validation errors.

Option resolution order: command line > config file > built-in default.
Config files are flat JSON objects keyed by option name (underscores),
optionally with per-command sections, e.g.
``{"seed": 7, "backbone": {"max_steps": 4}}``.
"""
from __future__ import annotations

import argparse
import datetime
import json
import sys
from pathlib import Path

import numpy as np

from . import plotting
from .backbone import DissolvedError, iterative_backbone, optimal_alpha
from .bids import BidParseError, cobid_network, read_bids
from .dissimilarity import (DEFAULT_WEIGHTS, TOPOLOGY_WEIGHTS, d_dissimilarity,
                            pairwise_dissimilarity)
from .generators import (TOPOLOGY_MODELS, CovertSpec, TopologySpec, gen_covert,
                         gen_topology)
from .graph import canonical_edge
from .heron import EdgePartition, hic_of_partition
from .io import graph_payload, load_graph, read_edge_list, save_graph
from .report import (Report, backbone_trace_payload, backbone_trace_rows,
                     emit_report, sweep_rows)
from .temporal import (WindowSpec, anomaly_scores, hic_series,
                       poisson_null_test, window_series, window_stats)
from . import experiments

BENCH_MODES = ("er-sweep", "gamma-sweep", "sensitivity", "covert", "scaling",
               "partial")


class CliError(ValueError):
    """Raised for argument/config/data problems that should exit with 2."""


def _load_config(path) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(cfg, dict):
        raise CliError("config file must contain a JSON object")
    return cfg


def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """Merge CLI values, config file values and built-in defaults.

    ``defaults`` enumerates every tunable of the running command; any
    config key outside it (other than another command's section) is
    rejected so typos fail loudly.
    """
    cfg_file = _load_config(args.config)
    section = {}
    flat = {}
    for key, value in cfg_file.items():
        if isinstance(value, dict):
            if key == args.command:
                section = value
            continue
        flat[key] = value
    merged = dict(defaults)
    for source in (flat, section):
        for key, value in source.items():
            if key == "seed":
                continue  # handled globally below
            if key not in defaults:
                if source is section:
                    raise CliError(
                        f"config key {key!r} is not an option of {args.command!r}")
                continue  # flat keys may belong to other commands
            merged[key] = value
    for key in defaults:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            merged[key] = cli_value
    seed = args.seed
    if seed is None:
        seed = section.get("seed", flat.get("seed", 0))
    merged["seed"] = int(seed)
    return merged


def _write_outputs(args, report: Report, figures=(), stem: str = "report",
                   default_format: str = "json") -> None:
    fmt = args.format or default_format
    if args.out is None:
        for _, fig in figures:
            plotting.close_figure(fig)
        sys.stdout.buffer.write(emit_report(report, fmt))
        sys.stdout.buffer.flush()
        return
    out = Path(args.out)
    if out.suffix.lower() in (".json", ".csv"):
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(emit_report(report, out.suffix.lstrip(".").lower()))
        base = out.with_suffix("")
    else:
        out.mkdir(parents=True, exist_ok=True)
        base = out / stem
        base.with_suffix(".json").write_bytes(emit_report(report, "json"))
        if report.rows:
            base.with_suffix(".csv").write_bytes(emit_report(report, "csv"))
    for suffix, fig in figures:
        plotting.save_figure(fig, f"{base}{suffix}.png")


def _load_input_graph(cfg):
    if not cfg.get("input"):
        raise CliError("--input edge list file is required")
    return load_graph(cfg["input"], cfg.get("nodes"))


def _parse_date(text):
    if text is None:
        return None
    try:
        return datetime.date.fromisoformat(text)
    except ValueError as exc:
        raise CliError(f"bad date {text!r}: expected YYYY-MM-DD") from exc


def _weights_for(cfg):
    return TOPOLOGY_WEIGHTS if cfg.get("topology_only") else DEFAULT_WEIGHTS


def _csv_floats(text) -> tuple[float, ...]:
    try:
        return tuple(float(t) for t in str(text).split(",") if t.strip())
    except ValueError as exc:
        raise CliError(f"bad numeric list {text!r}") from exc


def _csv_ints(text) -> tuple[int, ...]:
    return tuple(int(round(v)) for v in _csv_floats(text))


# ---------------------------------------------------------------- commands

GEN_DEFAULTS = dict(model="er", n=100, p=None, m=None, k=None, beta=None,
                    blocks=4, p_in=0.3, p_out=0.01, peripheral_p=0.05,
                    corrupt_fraction=0.10, n_groups=2, hierarchy_levels=1,
                    p_intra_corrupt=0.8, p_inter_corrupt=0.1,
                    p_background=0.05, weight_trials=10, weight_p=0.3,
                    win_rate_corrupt=0.9, win_rate_honest=0.3,
                    spec_json=None)


def cmd_gen(args) -> int:
    cfg = _resolve(args, GEN_DEFAULTS)
    if cfg.get("spec_json"):
        with open(cfg["spec_json"], "r", encoding="utf-8") as fh:
            loaded = json.load(fh)
        if not isinstance(loaded, dict):
            raise CliError("spec JSON must be an object")
        loaded.setdefault("seed", cfg["seed"])
        cfg.update(loaded)
    model = str(cfg["model"])
    corrupt: list = []
    if model == "covert":
        fields = {f: cfg[f] for f in (
            "n", "corrupt_fraction", "n_groups", "hierarchy_levels",
            "p_intra_corrupt", "p_inter_corrupt", "p_background",
            "weight_trials", "weight_p", "win_rate_corrupt",
            "win_rate_honest")}
        spec = CovertSpec(seed=cfg["seed"], **fields)
        net = gen_covert(spec)
        graph = net.graph
        corrupt = sorted(net.corrupt)
    else:
        spec = TopologySpec(
            model=model, n=int(cfg["n"]), p=cfg["p"], m=cfg["m"], k=cfg["k"],
            beta=cfg["beta"], blocks=int(cfg["blocks"]),
            p_in=float(cfg["p_in"]), p_out=float(cfg["p_out"]),
            peripheral_p=float(cfg["peripheral_p"]), seed=cfg["seed"])
        graph = gen_topology(spec)
    payload = {"model": model, "corrupt": corrupt, "graph": graph_payload(graph)}
    report = Report(command="gen", config=cfg, payload=payload, seed=cfg["seed"])
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        save_graph(out / f"{model}_edges.csv", graph,
                   node_path=out / f"{model}_nodes.csv")
        (out / f"{model}.json").write_bytes(emit_report(report, "json"))
    else:
        sys.stdout.buffer.write(emit_report(report, args.format or "json"))
    return 0


DISSIM_DEFAULTS = dict(topology_only=None)


def cmd_dissim(args) -> int:
    cfg = _resolve(args, DISSIM_DEFAULTS)
    g1 = load_graph(args.graph_a)
    g2 = load_graph(args.graph_b)
    res = d_dissimilarity(g1, g2, weights=_weights_for(cfg))
    cfg.update(graph_a=str(args.graph_a), graph_b=str(args.graph_b))
    payload = {"value": res.value, "mu_term": res.mu_term,
               "nnd_term": res.nnd_term, "centrality_term": res.centrality_term}
    report = Report(command="dissim", config=cfg, payload=payload,
                    rows=(payload,), seed=cfg["seed"])
    _write_outputs(args, report, stem="dissim")
    return 0


def cmd_distmat(args) -> int:
    cfg = _resolve(args, DISSIM_DEFAULTS)
    if len(args.graphs) < 2:
        raise CliError("distmat needs at least two edge list files")
    graphs = [load_graph(p) for p in args.graphs]
    labels = []
    for p in args.graphs:
        stem = Path(p).stem
        labels.append(stem if stem not in labels else f"{stem}#{len(labels)}")
    matrix = pairwise_dissimilarity(graphs, weights=_weights_for(cfg))
    cfg.update(graphs=[str(p) for p in args.graphs])
    rows = tuple(
        {"graph": labels[i], **{labels[j]: float(matrix[i, j])
                                for j in range(len(labels))}}
        for i in range(len(labels)))
    payload = {"labels": labels, "matrix": matrix.tolist()}
    report = Report(command="distmat", config=cfg, payload=payload, rows=rows,
                    seed=cfg["seed"])
    figs = [("", plotting.plot_distance_matrix(matrix, labels))]
    _write_outputs(args, report, figures=figs, stem="distmat",
                   default_format="csv")
    return 0


def cmd_hic(args) -> int:
    cfg = _resolve(args, DISSIM_DEFAULTS)
    base = load_graph(args.graph)
    active_edges = read_edge_list(args.active)
    partition = EdgePartition(
        base=base,
        active=frozenset(canonical_edge(u, v) for u, v, _ in active_edges))
    triangle = hic_of_partition(partition, weights=_weights_for(cfg))
    cfg.update(graph=str(args.graph), active=str(args.active))
    payload = triangle.as_dict()
    report = Report(command="hic", config=cfg, payload=payload,
                    rows=(payload,), seed=cfg["seed"])
    _write_outputs(args, report, stem="hic")
    return 0


BACKBONE_DEFAULTS = dict(input=None, nodes=None, max_steps=6, single=None,
                         upper_bound=1.0, max_candidates=None,
                         topology_only=None)


def cmd_backbone(args) -> int:
    cfg = _resolve(args, BACKBONE_DEFAULTS)
    g = _load_input_graph(cfg)
    weights = _weights_for(cfg)
    mc = cfg["max_candidates"]
    mc = None if mc is None else int(mc)
    if cfg.get("single"):
        step = optimal_alpha(g, upper_bound=float(cfg["upper_bound"]),
                             weights=weights, max_candidates=mc)

        class _Single:
            steps = (step,)
            stop_reason = "single-step"

        trace = _Single()
    else:
        trace = iterative_backbone(g, max_steps=int(cfg["max_steps"]),
                                   weights=weights, max_candidates=mc)
    payload = backbone_trace_payload(trace)
    rows = tuple(backbone_trace_rows(trace))
    report = Report(command="backbone", config=cfg, payload=payload, rows=rows,
                    seed=cfg["seed"])
    figs = [("", plotting.plot_backbone_trace(trace))] if trace.steps else []
    _write_outputs(args, report, figures=figs, stem="backbone")
    return 0


BENCH_DEFAULTS = dict(n=100, seeds=None, grid=None, gammas=None,
                      active_fraction=0.10, removal_fraction=0.10,
                      removal_mode="node", max_steps=None, sizes=None,
                      max_candidates=32, fractions=None, heavy=None,
                      corrupt_fraction=0.10, n_groups=2)


def _bench_covert_spec(cfg) -> CovertSpec:
    return CovertSpec(n=int(cfg["n"]),
                      corrupt_fraction=float(cfg["corrupt_fraction"]),
                      n_groups=int(cfg["n_groups"]))


def cmd_bench(args) -> int:
    cfg = _resolve(args, BENCH_DEFAULTS)
    mode = args.bench_mode
    seed = cfg["seed"]
    figs = []
    rows: tuple = ()
    if mode == "er-sweep":
        seeds = int(cfg["seeds"] or 100)
        grid = _csv_floats(cfg["grid"]) if cfg["grid"] else None
        sweep = experiments.uniform_activation_sweep(
            n=int(cfg["n"]), p_grid=grid, seeds=seeds, base_seed=seed)
        best = int(np.argmax(sweep.hic_mean))
        payload = {"grid": sweep.grid, "hic_mean": sweep.hic_mean,
                   "hic_std": sweep.hic_std, "aux": sweep.aux,
                   "argmax_p": sweep.grid[best],
                   "max_hic": sweep.hic_mean[best]}
        rows = tuple(sweep_rows(sweep, "p"))
        figs = [("", plotting.plot_sweep(sweep, "activation probability p",
                                         title="uniform activation"))]
    elif mode == "gamma-sweep":
        seeds = int(cfg["seeds"] or 100)
        gammas = _csv_floats(cfg["gammas"]) if cfg["gammas"] else (
            -2.0, -1.0, 0.0, 1.0, 2.0)
        sweep = experiments.gamma_sweep(
            gammas=gammas, seeds=seeds,
            active_fraction=float(cfg["active_fraction"]), base_seed=seed)
        rho, p = experiments.spearman_trend(sweep.grid, sweep.hic_mean)
        payload = {"grid": sweep.grid, "hic_mean": sweep.hic_mean,
                   "hic_std": sweep.hic_std, "spearman_rho": rho,
                   "spearman_p": p}
        rows = tuple(sweep_rows(sweep, "gamma"))
        figs = [("", plotting.plot_sweep(sweep, "betweenness exponent gamma",
                                         title="centrality-biased activation"))]
    elif mode == "sensitivity":
        table = experiments.sensitivity_comparison(
            n=int(cfg["n"]), seed=seed,
            removal_fraction=float(cfg["removal_fraction"]),
            mode=str(cfg["removal_mode"]))
        payload = {"rows": table.rows, "hic_rank_first": table.hic_rank_first()}
        rows = tuple({"topology": topo, **scores}
                     for topo, scores in table.rows.items())
        figs = [("", plotting.plot_sensitivity(table))]
    elif mode == "covert":
        seeds = int(cfg["seeds"] or 100)
        rep = experiments.covert_benchmark(
            _bench_covert_spec(cfg), seeds=seeds,
            max_steps=int(cfg["max_steps"] or 20), base_seed=seed)
        payload = {
            "seeds": rep.seeds, "mean_recall": rep.mean_recall,
            "mean_precision": rep.mean_precision,
            "final_contains_corrupt_fraction": rep.final_contains_corrupt_fraction,
            "mean_steps": rep.mean_steps,
            "recall_by_iteration": rep.recall_by_iteration,
            "precision_by_iteration": rep.precision_by_iteration,
            "retained_by_iteration": rep.retained_by_iteration,
            "runs_reaching_iteration": rep.runs_reaching_iteration,
        }
        rows = tuple(
            {"iteration": i + 1, "recall": rep.recall_by_iteration[i],
             "precision": rep.precision_by_iteration[i],
             "retained": rep.retained_by_iteration[i],
             "runs": rep.runs_reaching_iteration[i]}
            for i in range(len(rep.recall_by_iteration)))
        figs = [("", plotting.plot_detection(rep))]
    elif mode == "scaling":
        if cfg["sizes"]:
            sizes = _csv_ints(cfg["sizes"])
        else:
            sizes = (10, 50, 100, 500, 1000) if cfg["heavy"] else (10, 50, 100)
        seeds = int(cfg["seeds"] or (20 if cfg["heavy"] else 5))
        rep = experiments.scaling_benchmark(
            sizes=sizes, spec=_bench_covert_spec(cfg), seeds=seeds,
            max_steps=int(cfg["max_steps"] or 6), base_seed=seed,
            max_candidates=int(cfg["max_candidates"]))
        payload = {"sizes": rep.sizes, "robustness_mean": rep.robustness_mean,
                   "robustness_std": rep.robustness_std,
                   "peak_hic_mean": rep.peak_hic_mean,
                   "spearman_rho": rep.spearman_rho,
                   "spearman_p": rep.spearman_p}
        rows = tuple(
            {"size": rep.sizes[i], "robustness_mean": rep.robustness_mean[i],
             "robustness_std": rep.robustness_std[i],
             "peak_hic_mean": rep.peak_hic_mean[i]}
            for i in range(len(rep.sizes)))
        figs = [("", plotting.plot_scaling(rep))]
    elif mode == "partial":
        seeds = int(cfg["seeds"] or 100)
        fractions = _csv_floats(cfg["fractions"]) if cfg["fractions"] else \
            tuple(round(0.1 * i, 1) for i in range(1, 11))
        sweep = experiments.partial_info_benchmark(
            _bench_covert_spec(cfg), fractions=fractions, seeds=seeds,
            base_seed=seed)
        lo = [m for f, m in zip(sweep.grid, sweep.hic_mean) if f <= 0.3]
        hi = [m for f, m in zip(sweep.grid, sweep.hic_mean) if f >= 0.7]
        payload = {"grid": sweep.grid, "hic_mean": sweep.hic_mean,
                   "hic_std": sweep.hic_std,
                   "low_fraction_mean": float(np.mean(lo)) if lo else None,
                   "high_fraction_mean": float(np.mean(hi)) if hi else None}
        rows = tuple(sweep_rows(sweep, "fraction"))
        figs = [("", plotting.plot_sweep(sweep, "observed node fraction",
                                         title="partial information"))]
    else:
        raise CliError(f"unknown bench mode {mode!r}")
    report = Report(command=f"bench-{mode}", config=cfg, payload=payload,
                    rows=rows, seed=seed)
    _write_outputs(args, report, figures=figs, stem=f"bench_{mode}")
    return 0


TEMPORAL_DEFAULTS = dict(bids=None, item=None, window=3, stride=3, trailing=4,
                         threshold=1.96, start=None, end=None)


def cmd_temporal(args) -> int:
    cfg = _resolve(args, TEMPORAL_DEFAULTS)
    if not cfg.get("bids"):
        raise CliError("--bids file is required")
    records = read_bids(cfg["bids"])
    spec = WindowSpec(window_length=int(cfg["window"]),
                      stride=int(cfg["stride"]),
                      start=_parse_date(cfg.get("start")),
                      end=_parse_date(cfg.get("end")))
    windows = window_series(records, spec, item=cfg.get("item"))
    if not windows:
        raise CliError("no windows produced (no records match the selection)")
    graphs = [w.graph for w in windows]
    values = hic_series(graphs)
    anomaly = anomaly_scores(values, trailing=int(cfg["trailing"]),
                             threshold=float(cfg["threshold"]))
    stats = window_stats(graphs)
    rows = tuple(
        {"window": i, "start": w.start.isoformat(), "end": w.end.isoformat(),
         "nodes": stats["nodes"][i], "edges": stats["edges"][i],
         "hic": values[i], "z": anomaly.z[i], "flagged": anomaly.flagged[i]}
        for i, w in enumerate(windows))
    payload = {
        "windows": [{"start": w.start.isoformat(), "end": w.end.isoformat()}
                    for w in windows],
        "hic": values,
        "z": anomaly.z,
        "flagged": anomaly.flagged,
        "flagged_windows": [i for i, f in enumerate(anomaly.flagged) if f],
        "stats": stats,
        "trailing": anomaly.trailing,
        "threshold": anomaly.threshold,
    }
    report = Report(command="temporal", config=cfg, payload=payload, rows=rows,
                    seed=cfg["seed"])
    figs = [("", plotting.plot_temporal(windows, values, anomaly, stats))]
    _write_outputs(args, report, figures=figs, stem="temporal",
                   default_format="csv")
    return 0


NULLTEST_DEFAULTS = dict(bids=None, item=None, start=None, end=None,
                         input=None, nodes=None, total_biddings=None,
                         samples=200, level=0.05)


def cmd_nulltest(args) -> int:
    cfg = _resolve(args, NULLTEST_DEFAULTS)
    if cfg.get("bids"):
        records = read_bids(cfg["bids"])
        rng = (_parse_date(cfg.get("start")), _parse_date(cfg.get("end")))
        g = cobid_network(records, item=cfg.get("item"),
                          date_range=rng if any(rng) else None)
        total = cfg["total_biddings"]
        if total is None:
            sel = [r for r in records
                   if (cfg.get("item") is None or r.item_code == cfg["item"])
                   and (rng[0] is None or r.date >= rng[0])
                   and (rng[1] is None or r.date < rng[1])]
            total = len({r.bid_id for r in sel})
    elif cfg.get("input"):
        if cfg["total_biddings"] is None:
            raise CliError("--total-biddings is required with --input")
        g = _load_input_graph(cfg)
        total = cfg["total_biddings"]
    else:
        raise CliError("nulltest needs either --bids or --input")
    result = poisson_null_test(g, total_biddings=int(total),
                               samples=int(cfg["samples"]), seed=cfg["seed"],
                               significance_level=float(cfg["level"]))
    payload = {
        "real_hic": result.real_hic, "null_mean": result.null_mean,
        "null_std": result.null_std, "fraction": result.fraction,
        "p_value": result.p_value, "significant": result.significant,
        "samples": result.samples, "total_biddings": int(total),
        "n_companies": g.n, "null_values": result.null_values,
    }
    report = Report(command="nulltest", config=cfg, payload=payload,
                    seed=cfg["seed"])
    figs = [("", plotting.plot_null_test(result))]
    _write_outputs(args, report, figures=figs, stem="nulltest")
    return 0


# ------------------------------------------------------------------ parser

def _add_common(sp):
    sp.add_argument("--seed", type=int, default=None,
                    help="master RNG seed (default 0)")
    sp.add_argument("--config", default=None, metavar="FILE",
                    help="JSON file with option defaults")
    sp.add_argument("--out", default=None, metavar="PATH",
                    help="output directory, or explicit .json/.csv file")
    sp.add_argument("--format", choices=("json", "csv"), default=None,
                    help="stdout format when --out is omitted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heronet",
        description="Structural-asymmetry forensics for co-bidding networks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a synthetic network")
    p.add_argument("--model", choices=TOPOLOGY_MODELS + ("ba", "ws", "sbm",
                                                         "covert"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--m", type=int, help="attachment edges (barabasi-albert)")
    p.add_argument("--k", type=int, help="ring degree (watts-strogatz)")
    p.add_argument("--beta", type=float, help="rewiring prob (watts-strogatz)")
    p.add_argument("--blocks", type=int)
    p.add_argument("--p-in", type=float, dest="p_in")
    p.add_argument("--p-out", type=float, dest="p_out")
    p.add_argument("--peripheral-p", type=float, dest="peripheral_p")
    p.add_argument("--corrupt-fraction", type=float, dest="corrupt_fraction")
    p.add_argument("--n-groups", type=int, dest="n_groups")
    p.add_argument("--hierarchy-levels", type=int, dest="hierarchy_levels")
    p.add_argument("--p-intra-corrupt", type=float, dest="p_intra_corrupt")
    p.add_argument("--p-inter-corrupt", type=float, dest="p_inter_corrupt")
    p.add_argument("--p-background", type=float, dest="p_background")
    p.add_argument("--weight-trials", type=int, dest="weight_trials")
    p.add_argument("--weight-p", type=float, dest="weight_p")
    p.add_argument("--win-rate-corrupt", type=float, dest="win_rate_corrupt")
    p.add_argument("--win-rate-honest", type=float, dest="win_rate_honest")
    p.add_argument("--spec-json", dest="spec_json", metavar="FILE",
                   help="full generator spec as a JSON object")
    p.set_defaults(func=cmd_gen)
    _add_common(p)

    p = sub.add_parser("dissim", help="dissimilarity between two graphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--topology-only", action="store_const", const=True,
                   dest="topology_only",
                   help="drop the centrality term (weights 0.5/0.5/0)")
    p.set_defaults(func=cmd_dissim)
    _add_common(p)

    p = sub.add_parser("distmat", help="pairwise dissimilarity matrix")
    p.add_argument("graphs", nargs="+")
    p.add_argument("--topology-only", action="store_const", const=True,
                   dest="topology_only")
    p.set_defaults(func=cmd_distmat)
    _add_common(p)

    p = sub.add_parser("hic", help="asymmetry coefficient of an edge split")
    p.add_argument("graph", help="base edge list")
    p.add_argument("active", help="active-subset edge list")
    p.add_argument("--topology-only", action="store_const", const=True,
                   dest="topology_only")
    p.set_defaults(func=cmd_hic)
    _add_common(p)

    p = sub.add_parser("backbone", help="significance backbone extraction")
    p.add_argument("--input", metavar="FILE", help="edge list (u,v,weight)")
    p.add_argument("--nodes", metavar="FILE", help="node attribute sidecar")
    p.add_argument("--max-steps", type=int, dest="max_steps")
    p.add_argument("--single", action="store_const", const=True,
                   help="one threshold search instead of the iterative loop")
    p.add_argument("--upper-bound", type=float, dest="upper_bound")
    p.add_argument("--max-candidates", type=int, dest="max_candidates")
    p.add_argument("--topology-only", action="store_const", const=True,
                   dest="topology_only")
    p.set_defaults(func=cmd_backbone)
    _add_common(p)

    p = sub.add_parser("bench", help="synthetic benchmarks")
    p.add_argument("bench_mode", choices=BENCH_MODES)
    p.add_argument("--n", type=int)
    p.add_argument("--seeds", type=int)
    p.add_argument("--grid", help="comma list of activation probabilities")
    p.add_argument("--gammas", help="comma list of exponents")
    p.add_argument("--active-fraction", type=float, dest="active_fraction")
    p.add_argument("--removal-fraction", type=float, dest="removal_fraction")
    p.add_argument("--removal-mode", choices=("node", "edge"),
                   dest="removal_mode")
    p.add_argument("--max-steps", type=int, dest="max_steps")
    p.add_argument("--sizes", help="comma list of network sizes (scaling)")
    p.add_argument("--max-candidates", type=int, dest="max_candidates")
    p.add_argument("--fractions", help="comma list of observed fractions")
    p.add_argument("--corrupt-fraction", type=float, dest="corrupt_fraction")
    p.add_argument("--n-groups", type=int, dest="n_groups")
    p.add_argument("--heavy", action="store_const", const=True,
                   help="full-scale settings (slow)")
    p.set_defaults(func=cmd_bench)
    _add_common(p)

    p = sub.add_parser("temporal", help="windowed series and anomaly flags")
    p.add_argument("--bids", metavar="FILE", help="bid records CSV")
    p.add_argument("--item", help="restrict to one item code")
    p.add_argument("--window", type=int, help="window length in months")
    p.add_argument("--stride", type=int, help="window stride in months")
    p.add_argument("--trailing", type=int, help="z-score baseline windows")
    p.add_argument("--threshold", type=float, help="|z| flag threshold")
    p.add_argument("--start", help="first window start (YYYY-MM-DD)")
    p.add_argument("--end", help="series end (YYYY-MM-DD, exclusive)")
    p.set_defaults(func=cmd_temporal)
    _add_common(p)

    p = sub.add_parser("nulltest", help="weight-preserving null comparison")
    p.add_argument("--bids", metavar="FILE", help="bid records CSV")
    p.add_argument("--item", help="restrict to one item code")
    p.add_argument("--start", help="range start (YYYY-MM-DD)")
    p.add_argument("--end", help="range end (YYYY-MM-DD, exclusive)")
    p.add_argument("--input", metavar="FILE", help="edge list alternative")
    p.add_argument("--nodes", metavar="FILE", help="node attribute sidecar")
    p.add_argument("--total-biddings", type=int, dest="total_biddings")
    p.add_argument("--samples", type=int)
    p.add_argument("--level", type=float, help="significance level")
    p.set_defaults(func=cmd_nulltest)
    _add_common(p)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, BidParseError, DissolvedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
