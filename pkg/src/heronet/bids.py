"""Bid-record ingestion and co-bidding network construction.

Input is row-per-participation CSV: one line per (bid, company) pair
with an ISO date, a winner flag and an optional contract value. The
co-bidding network puts one node per company, weights nodes by how many
distinct bids they joined and edges by how many distinct bids both
endpoints joined.
"""
from __future__ import annotations

import csv
import datetime
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, build_graph

REQUIRED_COLUMNS = ("bid_id", "item_code", "date", "company_id", "winner")

_TRUE = {"1", "true", "t", "yes", "y"}
_FALSE = {"0", "false", "f", "no", "n", ""}


class BidParseError(ValueError):
    """Malformed bid CSV; the message carries the offending row number."""


@dataclass(frozen=True)
class BidRecord:
    """One company's participation in one bid."""

    bid_id: str
    item_code: str
    date: datetime.date
    company_id: str
    winner: bool
    value: float | None = None


def _parse_winner(raw: str, row: int) -> bool:
    low = raw.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise BidParseError(f"row {row}: cannot parse winner flag {raw!r}")


def parse_bids(lines: Iterable[str]) -> list[BidRecord]:
    """Parse bid participation rows from CSV text lines.

    Expects a header with columns bid_id,item_code,date,company_id,winner
    and optionally value; extra columns are ignored. Duplicate
    (bid_id, company_id) rows are merged, OR-ing the winner flag and
    keeping the first occurrence of the other fields. Raises
    BidParseError with the row number on malformed input.
    """
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise BidParseError("row 1: empty input, expected a CSV header")
    missing = [c for c in REQUIRED_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise BidParseError(f"row 1: header lacks required columns {missing}")
    merged: dict[tuple[str, str], BidRecord] = {}
    for rec in reader:
        row = reader.line_num
        bid_id = (rec.get("bid_id") or "").strip()
        company = (rec.get("company_id") or "").strip()
        item = (rec.get("item_code") or "").strip()
        if not bid_id or not company:
            raise BidParseError(f"row {row}: bid_id and company_id must be nonempty")
        raw_date = (rec.get("date") or "").strip()
        try:
            when = datetime.date.fromisoformat(raw_date)
        except ValueError:
            raise BidParseError(f"row {row}: invalid ISO date {raw_date!r}") from None
        winner = _parse_winner(rec.get("winner") or "", row)
        raw_value = (rec.get("value") or "").strip()
        value = None
        if raw_value:
            try:
                value = float(raw_value)
            except ValueError:
                raise BidParseError(f"row {row}: invalid value {raw_value!r}") from None
        key = (bid_id, company)
        prev = merged.get(key)
        if prev is None:
            merged[key] = BidRecord(bid_id=bid_id, item_code=item, date=when,
                                    company_id=company, winner=winner, value=value)
        elif winner and not prev.winner:
            merged[key] = BidRecord(bid_id=prev.bid_id, item_code=prev.item_code,
                                    date=prev.date, company_id=prev.company_id,
                                    winner=True, value=prev.value)
    return list(merged.values())


def read_bids(path) -> list[BidRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_bids(fh)


def cobid_network(
    records: Sequence[BidRecord],
    item: str | None = None,
    date_range: tuple[datetime.date | None, datetime.date | None] | None = None,
) -> Graph:
    """Co-bidding graph of the records matching the item and date window.

    The date window is half-open: start <= date < end, either side
    unbounded when None. Node weight counts distinct bids the company
    participated in; edge weight counts distinct bids shared by both
    endpoints; a company is flagged winner if it won at least one
    matching bid. Companies with no shared bids remain as isolated
    nodes. An empty selection yields the empty graph.
    """
    start = end = None
    if date_range is not None:
        start, end = date_range
    picked = [
        r for r in records
        if (item is None or r.item_code == item)
        and (start is None or r.date >= start)
        and (end is None or r.date < end)
    ]
    bids: dict[str, set[str]] = {}
    won: set[str] = set()
    for r in picked:
        bids.setdefault(r.bid_id, set()).add(r.company_id)
        if r.winner:
            won.add(r.company_id)
    node_weight: dict[str, int] = {}
    edge_weight: dict[tuple[str, str], int] = {}
    for participants in bids.values():
        members = sorted(participants)
        for c in members:
            node_weight[c] = node_weight.get(c, 0) + 1
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                key = (members[i], members[j])
                edge_weight[key] = edge_weight.get(key, 0) + 1
    return build_graph(
        ((u, v, float(w)) for (u, v), w in edge_weight.items()),
        node_weights=node_weight,
        winners={c: (c in won) for c in node_weight},
        extra_nodes=node_weight.keys(),
    )
