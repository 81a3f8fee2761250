"""Plain-text graph persistence.

Edge list format, one edge per line::

    u,v[,weight]

Node IDs are bare integers or strings; weight defaults to 1. Lines that
are blank or start with ``#`` are skipped. An optional node sidecar CSV
(``node_id,node_weight,winner`` with header) carries per-node data for
companies that never co-bid, node weights, and winner flags.
"""
from __future__ import annotations

import csv

from .graph import Graph, build_graph

_NODE_HEADER = ["node_id", "node_weight", "winner"]


def _parse_id(token: str):
    token = token.strip()
    if not token:
        raise ValueError("empty node id")
    try:
        return int(token)
    except ValueError:
        return token


def parse_edge_lines(lines) -> list[tuple]:
    edges = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (2, 3):
            raise ValueError(f"line {lineno}: expected 'u,v[,weight]', got {raw!r}")
        u, v = _parse_id(parts[0]), _parse_id(parts[1])
        w = 1.0
        if len(parts) == 3 and parts[2]:
            try:
                w = float(parts[2])
            except ValueError:
                raise ValueError(f"line {lineno}: bad weight {parts[2]!r}") from None
        edges.append((u, v, w))
    return edges


def read_edge_list(path) -> list[tuple]:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_lines(fh)


def write_edge_list(path, graph: Graph) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("# u,v,weight\n")
        for u, v, w in graph.edges:
            fh.write(f"{u},{v},{w:.12g}\n")


def read_node_table(path) -> tuple[dict, dict, list]:
    """Read the node sidecar. Returns (weights, winners, ids-in-file-order)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [c.strip() for c in reader.fieldnames] != _NODE_HEADER:
            raise ValueError(
                f"node table must have header {','.join(_NODE_HEADER)}")
        weights, winners, order = {}, {}, []
        for row in reader:
            nid = _parse_id(row["node_id"])
            if nid in weights:
                raise ValueError(f"duplicate node id {nid!r} in node table")
            weights[nid] = int(float(row["node_weight"]))
            winners[nid] = row["winner"].strip().lower() in {"1", "true", "yes"}
            order.append(nid)
    return weights, winners, order


def write_node_table(path, graph: Graph) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_NODE_HEADER)
        for i, nid in enumerate(graph.node_ids):
            writer.writerow([nid, int(graph.node_weights[i]),
                             int(bool(graph.winners[i]))])


def load_graph(edge_path, node_path=None) -> Graph:
    """Build a Graph from an edge list plus optional node sidecar."""
    edges = read_edge_list(edge_path)
    if node_path is None:
        return build_graph(edges)
    weights, winners, order = read_node_table(node_path)
    return build_graph(edges, node_weights=weights, winners=winners,
                       extra_nodes=order)


def save_graph(edge_path, graph: Graph, node_path=None) -> None:
    write_edge_list(edge_path, graph)
    if node_path is not None:
        write_node_table(node_path, graph)


def graph_payload(graph: Graph) -> dict:
    """JSON-ready dict of a graph (used by the gen command)."""
    return {
        "n": graph.n,
        "m": graph.m,
        "nodes": [
            {"id": nid, "weight": float(graph.node_weights[i]),
             "winner": bool(graph.winners[i])}
            for i, nid in enumerate(graph.node_ids)
        ],
        "edges": [[u, v, w] for u, v, w in graph.edges],
    }
