"""Deterministic report emission: canonical JSON and CSV series.

Emission is byte-stable: keys are sorted, floats are rounded to 12
significant digits, and no timestamps are embedded, so identical runs
produce identical digests. The config hash ties an output file back to
the exact resolved configuration that produced it.
"""
from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = "1"


def canonical(obj):
    """Recursively coerce to JSON-safe values with fixed float precision."""
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        f = float(obj)
        if f != f:  # NaN has no JSON literal
            return None
        if f in (float("inf"), float("-inf")):
            return None
        return float(f"{f:.12g}")
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (set, frozenset)):
        return sorted((canonical(v) for v in obj), key=repr)
    return str(obj)


def _format_cell(v) -> str:
    if isinstance(v, bool):
        return "1" if v else "0"
    if isinstance(v, float):
        if v != v:
            return ""
        return f"{v:.12g}"
    if v is None:
        return ""
    return str(v)


def config_hash(config: dict) -> str:
    blob = json.dumps(canonical(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()[:16]


@dataclass(frozen=True)
class Report:
    """A command's output: run metadata, a payload tree, optional rows.

    ``payload`` serializes to JSON; ``rows`` (a list of uniform dicts)
    serializes to the CSV series when one is requested.
    """

    command: str
    config: dict
    payload: dict
    rows: tuple[dict, ...] = ()
    seed: int | None = None
    schema_version: str = SCHEMA_VERSION

    def metadata(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "seed": self.seed,
            "config_hash": config_hash(self.config),
        }


def emit_report(report: Report, fmt: str = "json") -> bytes:
    """Render a report to canonical bytes in the requested format."""
    if fmt == "json":
        doc = dict(report.metadata())
        doc["config"] = canonical(report.config)
        doc["payload"] = canonical(report.payload)
        return (json.dumps(doc, sort_keys=True, indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        if not report.rows:
            raise ValueError(f"command {report.command!r} produced no CSV series")
        meta = report.metadata()
        buf = io.StringIO()
        for key in ("schema_version", "command", "seed", "config_hash"):
            buf.write(f"# {key}={meta[key]}\n")
        header = list(report.rows[0].keys())
        buf.write(",".join(header) + "\n")
        for row in report.rows:
            if list(row.keys()) != header:
                raise ValueError("CSV rows must share one column set")
            buf.write(",".join(_format_cell(canonical(row[k])) for k in header) + "\n")
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}")


def parse_report(data: bytes) -> dict:
    """Parse bytes produced by emit_report(fmt='json')."""
    return json.loads(data.decode("utf-8"))


def backbone_trace_payload(trace) -> dict:
    """JSON-ready view of a backbone trace, including audit edge lists."""
    steps = []
    for i, step in enumerate(trace.steps, start=1):
        retained = {u for u, v, _ in step.active.edges} | {
            v for u, v, _ in step.active.edges}
        steps.append({
            "step": i,
            "alpha": step.alpha,
            "hic": step.triangle.hic,
            "d12": step.triangle.d12,
            "d13": step.triangle.d13,
            "d23": step.triangle.d23,
            "nodes": step.active.n,
            "retained_nodes": len(retained),
            "active_edges": step.active.m,
            "inactive_edges": step.inactive.m,
            "winner_fraction": step.winner_fraction,
            "candidates_evaluated": step.candidates_evaluated,
            "active_edge_list": [[u, v, w] for u, v, w in step.active.edges],
        })
    return {"stop_reason": trace.stop_reason, "n_steps": len(trace.steps),
            "steps": steps}


def backbone_trace_rows(trace) -> list[dict]:
    """Flat per-step rows (no edge lists) for the CSV series."""
    payload = backbone_trace_payload(trace)
    rows = []
    for step in payload["steps"]:
        row = {k: v for k, v in step.items() if k != "active_edge_list"}
        rows.append(row)
    return rows


def sweep_rows(sweep, grid_name: str) -> list[dict]:
    """CSV rows of a SweepResult-like object."""
    rows = []
    for i, g in enumerate(sweep.grid):
        row = {grid_name: g, "hic_mean": sweep.hic_mean[i], "hic_std": sweep.hic_std[i]}
        for name, series in sweep.aux.items():
            row[name] = series[i]
        rows.append(row)
    return rows
