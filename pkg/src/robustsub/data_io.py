"""Edge-list and vector-table loaders with the preprocessing used in the experiments."""
from __future__ import annotations

import csv
import logging

import numpy as np

from .errors import DomainError, ParseError
from .objectives import Graph, VectorDataset

log = logging.getLogger(__name__)

PREPROCESSING = ("none", "mean_shift", "mean_shift_unit_norm")


def load_edge_list(path, directed: bool = False) -> Graph:
    """Parse a SNAP-style edge list ('#' comments, two integer tokens per line).

    Original ids are remapped to 0..n-1 in ascending order of the original id;
    the mapping is kept on ``graph.original_ids``. Self loops and duplicate
    edges are dropped (every node covers itself anyway).
    """
    edges = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError(f"expected two tokens, got {len(tokens)}", line=lineno)
            try:
                u, v = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError(f"non-integer node id in {line!r}", line=lineno) from None
            edges.append((u, v))
    if not edges:
        raise DomainError(f"{path}: no edges")

    original = sorted({u for e in edges for u in e})
    dense = {u: i for i, u in enumerate(original)}
    adj: list[set] = [set() for _ in original]
    for u, v in edges:
        a, b = dense[u], dense[v]
        if a == b:
            continue
        adj[a].add(b)
        if not directed:
            adj[b].add(a)
    graph = Graph(len(original), [sorted(s) for s in adj], directed, original)
    log.info("loaded %s: n=%d m=%d", path, graph.n, graph.num_edges)
    return graph


def write_edge_list(graph: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# nodes: {graph.n} edges: {graph.num_edges}\n")
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def write_id_map(graph: Graph, path) -> None:
    """Sidecar with one 'original_id dense_id' pair per line."""
    original = graph.original_ids if graph.original_ids is not None else range(graph.n)
    with open(path, "w", encoding="utf-8") as fh:
        for dense, orig in enumerate(original):
            fh.write(f"{orig} {dense}\n")


def read_id_map(path) -> dict[int, int]:
    mapping = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                orig, dense = (int(t) for t in line.split())
            except ValueError:
                raise ParseError("expected 'original_id dense_id'", line=lineno) from None
            mapping[orig] = dense
    return mapping


def preprocess(X: np.ndarray, mode: str) -> np.ndarray:
    if mode not in PREPROCESSING:
        raise DomainError(f"unknown preprocessing {mode!r}; expected one of {PREPROCESSING}")
    X = np.array(X, dtype=float)
    if mode == "none":
        return X
    X = X - X.mean(axis=0)
    if mode == "mean_shift_unit_norm":
        norms = np.linalg.norm(X, axis=1)
        nz = norms > 0
        X[nz] /= norms[nz, None]
        X[~nz] = 0.0
    return X


def load_vectors(path, delimiter: str = ",", preprocessing: str = "none",
                 expected_dim: int | None = None) -> VectorDataset:
    rows = []
    width = None
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, record in enumerate(csv.reader(fh, delimiter=delimiter), 1):
            if not record or all(not t.strip() for t in record):
                continue
            if width is None:
                width = len(record)
            elif len(record) != width:
                raise ParseError(f"row has {len(record)} columns, expected {width}", line=lineno)
            try:
                rows.append([float(t) for t in record])
            except ValueError:
                col = next(i for i, t in enumerate(record, 1) if not _is_float(t))
                raise ParseError(f"non-numeric token {record[col - 1]!r}", line=lineno, column=col) from None
    if not rows:
        raise DomainError(f"{path}: no rows")
    if expected_dim is not None and width != expected_dim:
        log.warning("%s: %d columns, expected %d", path, width, expected_dim)
    return VectorDataset(preprocess(np.array(rows), preprocessing))


def _is_float(token: str) -> bool:
    try:
        float(token)
    except ValueError:
        return False
    return True


def subsample(n: int, size: int, seed: int) -> list[int]:
    """Uniform sample of ``size`` ids from range(n) without replacement, sorted."""
    if size > n or size < 0:
        raise DomainError(f"cannot draw {size} of {n} items")
    rng = np.random.default_rng(seed)
    return sorted(int(i) for i in rng.choice(n, size=size, replace=False))
