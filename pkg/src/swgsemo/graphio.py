"""Edge-list and MatrixMarket-style graph ingestion, neighborhoods, and cost assignment.

Accepted input: '%' or '#' comment lines, an optional "rows cols nnz" header
with rows == cols (the MatrixMarket coordinate shape), and whitespace-separated
"u v [weight]" records. Weights are ignored, duplicate and reversed edges are
collapsed, self-loops are dropped. Without a header the node set is the set of
ids that appear, compacted to 0..n-1 in ascending id order; with a header the
node count is taken from it, so isolated nodes survive ingestion.
"""

from __future__ import annotations

import gzip
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .problems import CostModel


class GraphParseError(ValueError):
    """Raised for malformed graph input; carries the offending line number."""


@dataclass(eq=False)
class Graph:
    """Undirected graph with contiguous 0-based internal ids."""

    n: int
    edges: tuple[tuple[int, int], ...]
    label_map: dict[int, int] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    @property
    def edge_count(self) -> int:
        return len(self.edges)


def _normalize_edges(n: int, raw_edges) -> tuple[tuple[int, int], ...]:
    seen = set()
    for u, v in raw_edges:
        if u == v:
            continue
        seen.add((u, v) if u < v else (v, u))
    return tuple(sorted(seen))


def parse_edge_list(text: str | bytes) -> Graph:
    """Parse edge-list text into a Graph; raises GraphParseError with a line number."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    header = None
    records: list[tuple[int, int]] = []
    saw_data = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "%#":
            continue
        tokens = line.split()
        if not saw_data and len(tokens) == 3:
            try:
                rows, cols, nnz = (int(t) for t in tokens)
            except ValueError:
                rows = cols = -1
            if rows == cols and rows >= 0 and nnz >= 0:
                header = rows
                saw_data = True
                continue
        saw_data = True
        if len(tokens) < 2:
            raise GraphParseError(f"line {lineno}: expected 'u v [weight]', got {line!r}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(f"line {lineno}: node ids must be integers, got {line!r}") from None
        if u < 0 or v < 0:
            raise GraphParseError(f"line {lineno}: node ids must be non-negative, got {line!r}")
        if header is not None and not (1 <= u <= header and 1 <= v <= header):
            raise GraphParseError(f"line {lineno}: node id outside 1..{header} declared by header")
        records.append((u, v))
    if header is not None:
        if header == 0:
            raise GraphParseError("header declares an empty graph")
        n = header
        label_map = {i + 1: i for i in range(n)}
        edges = _normalize_edges(n, ((u - 1, v - 1) for u, v in records))
    else:
        ids = sorted({x for e in records for x in e})
        if not ids:
            raise GraphParseError("no nodes found: input declares an empty graph")
        label_map = {ext: i for i, ext in enumerate(ids)}
        n = len(ids)
        edges = _normalize_edges(n, ((label_map[u], label_map[v]) for u, v in records))
    return Graph(n=n, edges=edges, label_map=label_map)


def serialize_edge_list(graph: Graph) -> str:
    """Canonical text form: a "n n m" header, then 1-based edges in sorted order."""
    lines = [f"{graph.n} {graph.n} {len(graph.edges)}"]
    lines.extend(f"{u + 1} {v + 1}" for u, v in graph.edges)
    return "\n".join(lines) + "\n"


def load_graph(path) -> Graph:
    """Read a graph file; '.gz' paths are transparently decompressed."""
    p = Path(path)
    if p.suffix == ".gz":
        with gzip.open(p, "rt", encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    return parse_edge_list(p.read_text(encoding="utf-8"))


def closed_neighborhoods(graph: Graph) -> list[int]:
    """Per-node bitsets of the node itself plus its neighbors."""
    nbs = [1 << v for v in range(graph.n)]
    for u, v in graph.edges:
        nbs[u] |= 1 << v
        nbs[v] |= 1 << u
    return nbs


def assign_costs(graph: Graph, model: CostModel) -> np.ndarray:
    """Per-node costs under the model; deterministic for a given model seed."""
    if model.kind == "uniform":
        return np.ones(graph.n, dtype=np.float64)
    lo, hi = model.interval
    if lo >= hi:
        raise ValueError("cost interval must satisfy lo < hi")
    if lo <= 0:
        raise ValueError("cost interval must be positive (every marginal cost > 0)")
    if model.seed is None:
        raise ValueError("random cost model needs a seed")
    rng = np.random.default_rng(model.seed)
    return rng.uniform(lo, hi, size=graph.n)
