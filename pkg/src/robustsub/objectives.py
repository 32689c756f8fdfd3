"""Concrete objectives: explicit tables, one-hop dominating set, exemplar clustering."""
from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .errors import ConfigError, DomainError
from .oracle import Oracle, as_element_set

TOL = 1e-9


def _mask(S) -> int:
    m = 0
    for e in S:
        m |= 1 << e
    return m


class TabularObjective(Oracle):
    """Set function given by an explicit table of all 2^n values.

    ``values`` is either a sequence of length 2^n indexed by bitmask, or a
    mapping from sets to values; missing sets in a mapping are an error.

    ``check`` selects construction-time validation: ``"full"`` (normalized,
    monotone and submodular), ``"monotone"`` (normalized and monotone) or
    ``"none"``.
    """

    MAX_N = 20

    def __init__(self, n: int, values, labels=None, check: str = "full"):
        if not (1 <= n <= self.MAX_N):
            raise DomainError(f"tabular objectives support 1 <= n <= {self.MAX_N}, got {n}")
        super().__init__(n, labels)
        size = 1 << n
        if isinstance(values, Mapping):
            table = np.full(size, np.nan)
            for S, v in values.items():
                table[_mask(as_element_set(S, n))] = float(v)
            if np.isnan(table).any():
                missing = int(np.flatnonzero(np.isnan(table))[0])
                raise ConfigError(f"table has no value for mask {missing:#b}")
        else:
            table = np.asarray(values, dtype=float)
            if table.shape != (size,):
                raise ConfigError(f"expected {size} table entries, got {table.shape}")
        self.table = table
        if check not in ("full", "monotone", "none"):
            raise ConfigError(f"unknown check mode {check!r}")
        if check != "none":
            problem = self.find_violation(submodular=(check == "full"))
            if problem is not None:
                raise ConfigError(problem)

    def _value(self, S):
        return self.table[_mask(S)]

    def _gain(self, e, S):
        m = _mask(S)
        return self.table[m | (1 << e)] - self.table[m]

    def gains(self, e: int) -> np.ndarray:
        """f(e | S) for every mask S (zero where e in S)."""
        masks = np.arange(1 << self.n)
        return self.table[masks | (1 << e)] - self.table

    def find_violation(self, submodular: bool = True, tol: float = TOL) -> str | None:
        """Describe the first normalization/monotonicity/submodularity violation, or None."""
        t = self.table
        if t[0] != 0.0:
            return f"f(empty) = {t[0]} != 0"
        if (t < 0).any():
            return "negative table value"
        masks = np.arange(1 << self.n)
        for e in range(self.n):
            g = self.gains(e)
            bad = np.flatnonzero(g < -tol)
            if bad.size:
                return f"not monotone: f({e} | mask {int(bad[0]):#b}) = {g[bad[0]]}"
            if not submodular:
                continue
            for x in range(self.n):
                if x == e:
                    continue
                # f(e|S) >= f(e|S+x) for every S without x
                without = masks[(masks & (1 << x)) == 0]
                diff = g[without] - g[without | (1 << x)]
                bad = np.flatnonzero(diff < -tol)
                if bad.size:
                    S = int(without[bad[0]])
                    return (f"not submodular: f({e} | {S:#b}) = {g[S]} < "
                            f"f({e} | {S | (1 << x):#b}) = {g[S | (1 << x)]}")
        return None

    def is_submodular(self, tol: float = TOL) -> bool:
        return self.find_violation(submodular=True, tol=tol) is None


def table2_objective(n_param: float, eps_param: float) -> TabularObjective:
    """Three-element counterexample on which plain greedy is arbitrarily non-robust.

    Elements 0, 1, 2 stand for s1, s2, s3. The full set is completed with
    n + eps. The table is monotone for every legal parameter pair but is only
    submodular when eps == 1, so construction validates monotonicity only.
    """
    n, eps = float(n_param), float(eps_param)
    if not (n >= 0 and 0 <= eps < n - 1):
        raise ConfigError(f"need 0 <= eps < n - 1, got n={n_param}, eps={eps_param}")
    values = {
        (): 0.0,
        (0,): n,
        (1,): eps,
        (2,): n - 1,
        (0, 1): n + eps,
        (0, 2): n,
        (1, 2): n,
        (0, 1, 2): n + eps,
    }
    return TabularObjective(3, values, labels=("s1", "s2", "s3"), check="monotone")


def random_tabular(n: int, rng: np.random.Generator, universe: int | None = None) -> TabularObjective:
    """Random monotone submodular table: weighted coverage plus facility location.

    Both parts are monotone submodular, so the sum is too; the validator runs anyway.
    """
    m = universe if universe is not None else int(rng.integers(n, 3 * n + 1))
    weights = rng.uniform(0.0, 1.0, size=m)
    covers = rng.random((n, m)) < rng.uniform(0.15, 0.5)
    sims = rng.uniform(0.0, 1.0, size=(n, m)) * (rng.random((n, m)) < 0.5)
    mix = rng.uniform(0.0, 1.0)

    size = 1 << n
    table = np.zeros(size)
    cover_mask = np.zeros((size, m), dtype=bool)
    best_sim = np.zeros((size, m))
    for mask in range(1, size):
        low = mask & -mask
        e = low.bit_length() - 1
        rest = mask ^ low
        cover_mask[mask] = cover_mask[rest] | covers[e]
        best_sim[mask] = np.maximum(best_sim[rest], sims[e])
        table[mask] = weights[cover_mask[mask]].sum() + mix * best_sim[mask].sum()
    return TabularObjective(n, table, check="full")


# --- dominating set -------------------------------------------------------

@dataclass
class Graph:
    n: int
    adjacency: list[list[int]]
    directed: bool = False
    original_ids: list[int] | None = None

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise DomainError("adjacency must have one list per node")
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if not (0 <= v < self.n):
                    raise DomainError(f"neighbor {v} of node {u} out of range")

    @property
    def num_edges(self) -> int:
        total = sum(len(a) for a in self.adjacency)
        return total if self.directed else total // 2

    def edges(self):
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if self.directed or u < v:
                    yield u, v


def star_graph(leaves: int) -> Graph:
    adj = [list(range(1, leaves + 1))] + [[0] for _ in range(leaves)]
    return Graph(leaves + 1, adj)


def random_graph(n: int, p: float, rng: np.random.Generator, directed: bool = False) -> Graph:
    adj: list[set] = [set() for _ in range(n)]
    hits = rng.random((n, n)) < p
    for u, v in zip(*np.nonzero(hits)):
        u, v = int(u), int(v)
        if u == v or (not directed and u > v):
            continue
        adj[u].add(v)
        if not directed:
            adj[v].add(u)
    return Graph(n, [sorted(a) for a in adj], directed)


class DomSetOracle(Oracle):
    """f(S) = |S | N(S)| with N the out-neighbourhood."""

    def __init__(self, graph: Graph, labels=None):
        super().__init__(graph.n, labels)
        self.graph = graph
        self._closed = []
        for u, nbrs in enumerate(graph.adjacency):
            m = 1 << u
            for v in nbrs:
                m |= 1 << v
            self._closed.append(m)

    def covered(self, S) -> int:
        m = 0
        closed = self._closed
        for e in S:
            m |= closed[e]
        return m

    def _value(self, S):
        return float(self.covered(S).bit_count())

    def _gain(self, e, S):
        c = self.covered(S)
        return float((self._closed[e] & ~c).bit_count())


def domset_value(graph: Graph, S) -> float:
    return DomSetOracle(graph).evaluate(S)


# --- exemplar clustering --------------------------------------------------

@dataclass
class VectorDataset:
    vectors: np.ndarray

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=float)
        if self.vectors.ndim != 2:
            raise DomainError("vectors must be a 2-d array")
        if self.vectors.shape[0] == 0:
            raise DomainError("empty dataset")

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]


@dataclass
class ExemplarConfig:
    reference_element: np.ndarray | None = None
    subsample_ids: Sequence[int] | None = None


class ExemplarOracle(Oracle):
    """Reduction in k-medoid loss relative to a reference element.

    f(S) = L({e0}) - L(S + {e0}),  L(A) = mean_{v in V'} min_{s in A} ||s - v||^2
    """

    def __init__(self, dataset: VectorDataset, cfg: ExemplarConfig | None = None, labels=None):
        super().__init__(dataset.n, labels)
        cfg = cfg or ExemplarConfig()
        X = dataset.vectors
        e0 = np.zeros(dataset.dim) if cfg.reference_element is None else np.asarray(cfg.reference_element, float)
        if e0.shape != (dataset.dim,):
            raise DomainError(f"reference element has shape {e0.shape}, dataset dim is {dataset.dim}")
        if cfg.subsample_ids is None:
            ids = np.arange(dataset.n)
        else:
            ids = np.asarray(cfg.subsample_ids, dtype=int)
            if ids.size == 0 or len(set(ids.tolist())) != ids.size:
                raise DomainError("subsample ids must be non-empty and distinct")
            if ids.min() < 0 or ids.max() >= dataset.n:
                raise DomainError("subsample id out of range")
        self.dataset = dataset
        self.subsample_ids = ids
        self._points = X[ids]
        self._d0 = ((self._points - e0) ** 2).sum(axis=1)
        self._base_loss = self._d0.mean()
        self._cache: dict[int, np.ndarray] = {}
        self._cache_lock = threading.Lock()

    def distances(self, e: int) -> np.ndarray:
        d = self._cache.get(e)
        if d is None:
            d = ((self._points - self.dataset.vectors[e]) ** 2).sum(axis=1)
            with self._cache_lock:
                d = self._cache.setdefault(e, d)
        return d

    def _min_dist(self, S) -> np.ndarray:
        best = self._d0
        for e in sorted(S):
            best = np.minimum(best, self.distances(e))
        return best

    def _value(self, S):
        return self._base_loss - self._min_dist(S).mean()

    def _gain(self, e, S):
        best = self._min_dist(S)
        return best.mean() - np.minimum(best, self.distances(e)).mean()


def exemplar_value(dataset: VectorDataset, cfg: ExemplarConfig | None, S) -> float:
    return ExemplarOracle(dataset, cfg).evaluate(S)


def exemplar_value_direct(X: np.ndarray, e0: np.ndarray, S, ids=None) -> float:
    """Unoptimized evaluation straight from the loss definition (test oracle)."""
    X = np.asarray(X, float)
    ids = range(len(X)) if ids is None else ids
    V = [X[v] for v in ids]

    def loss(A):
        return sum(min(float(((a - v) ** 2).sum()) for a in A) for v in V) / len(V)

    return loss([e0]) - loss([e0] + [X[s] for s in S])


def all_subsets(n: int):
    for r in range(n + 1):
        yield from combinations(range(n), r)
