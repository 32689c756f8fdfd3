"""Sweep harness: flat key=value configs, per-cell records, CSV and bound reports."""
from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass, field, fields

import numpy as np

from . import data_io
from .adversaries import DEFAULT_NODE_BUDGET, greedy_removal, optimal_removal
from .errors import ConfigError, DomainError, InfeasibleError, ResourceError
from .objectives import (DomSetOracle, ExemplarConfig, ExemplarOracle,
                         random_graph, table2_objective)
from .oracle import Oracle
from .solvers import greedy_baseline, osu, osu_feasible, partition_layout, pro, theorem1_certificate
from .subroutines import KINDS, SubroutineSpec

ALGORITHMS = ("greedy", "osu", "pro")
DATASET_KINDS = ("edge_list", "vectors", "table2", "random_graph")
OBJECTIVE_FOR_KIND = {"edge_list": "domset", "random_graph": "domset", "vectors": "exemplar", "table2": "tabular"}


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"expected a list of integers, got {text!r}") from None


def _bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"expected a boolean, got {text!r}")


@dataclass
class ExperimentConfig:
    dataset_kind: str = "table2"
    dataset: str = ""
    objective: str = ""
    directed: bool = False
    delimiter: str = ","
    preprocessing: str = "none"
    table2_n: float = 10.0
    table2_eps: float = 0.5
    graph_nodes: int = 200
    graph_edge_prob: float = 0.02
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    subroutine: str = "lazy_greedy"
    subroutine_epsilon: float | None = None
    k_values: list[int] = field(default_factory=lambda: [2])
    tau_values: list[int] = field(default_factory=lambda: [1])
    eta: int = 1
    osu_bucket_size: int | None = None  # None means "tau"
    adversary: str = "optimal"
    node_budget: int = DEFAULT_NODE_BUDGET
    seed: int = 0
    subsample_size: int | None = 1000
    timing: bool = True
    output: str = "results.csv"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        if self.dataset_kind not in DATASET_KINDS:
            raise ConfigError(f"dataset_kind must be one of {DATASET_KINDS}")
        if not self.objective:
            self.objective = OBJECTIVE_FOR_KIND[self.dataset_kind]
        if self.objective != OBJECTIVE_FOR_KIND[self.dataset_kind]:
            raise ConfigError(f"objective {self.objective!r} does not fit dataset kind {self.dataset_kind!r}")
        if self.dataset_kind in ("edge_list", "vectors") and not self.dataset:
            raise ConfigError(f"dataset path required for {self.dataset_kind}")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad or not self.algorithms:
            raise ConfigError(f"unknown algorithms {bad}; expected a subset of {ALGORITHMS}")
        if self.adversary not in ("optimal", "greedy"):
            raise ConfigError("adversary must be 'optimal' or 'greedy'")
        if not self.k_values or not self.tau_values:
            raise ConfigError("k and tau lists must be non-empty")
        if min(self.k_values) < 0 or min(self.tau_values) < 0:
            raise ConfigError("k and tau must be non-negative")
        if self.eta < 1:
            raise ConfigError("eta must be >= 1")
        if self.osu_bucket_size is not None and self.osu_bucket_size < 0:
            raise ConfigError("osu_bucket_size must be non-negative")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")
        if self.preprocessing not in data_io.PREPROCESSING:
            raise ConfigError(f"preprocessing must be one of {data_io.PREPROCESSING}")
        self.subroutine_spec()  # raises ConfigError on bad kind/epsilon

    def subroutine_spec(self) -> SubroutineSpec:
        if self.subroutine not in KINDS:
            raise ConfigError(f"subroutine must be one of {KINDS}")
        return SubroutineSpec(self.subroutine, self.subroutine_epsilon, self.seed)

    @classmethod
    def from_mapping(cls, items: dict[str, str]) -> "ExperimentConfig":
        """Build from raw string key/value pairs (config file plus overrides)."""
        kw: dict = {}
        for key, raw in items.items():
            raw = raw.strip()
            if key in ("k", "k_values"):
                kw["k_values"] = _ints(raw)
            elif key in ("tau", "tau_values"):
                kw["tau_values"] = _ints(raw)
            elif key == "algorithms":
                kw["algorithms"] = [a.strip() for a in raw.replace(",", " ").split()]
            elif key == "osu_bucket_size":
                kw[key] = None if raw == "tau" else _int(key, raw)
            elif key == "subsample_size":
                kw[key] = None if raw in ("", "none", "all") else _int(key, raw)
            elif key == "subroutine_epsilon":
                kw[key] = None if raw in ("", "none") else _float(key, raw)
            elif key in ("eta", "seed", "graph_nodes", "node_budget"):
                kw[key] = _int(key, raw)
            elif key in ("table2_n", "table2_eps", "graph_edge_prob"):
                kw[key] = _float(key, raw)
            elif key in ("directed", "timing"):
                kw[key] = _bool(raw)
            elif key in ("dataset_kind", "dataset", "objective", "delimiter", "preprocessing",
                         "subroutine", "adversary", "output"):
                kw[key] = raw
            else:
                raise ConfigError(f"unknown config key {key!r}")
        return cls(**kw)


def _int(key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def _float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def parse_config_text(text: str) -> dict[str, str]:
    """key = value per line, '#' starts a comment line."""
    items = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key=value, got {line!r}")
        key, value = line.split("=", 1)
        items[key.strip()] = value.strip()
    return items


def load_config(path, overrides: dict[str, str] | None = None) -> ExperimentConfig:
    with open(path, encoding="utf-8") as fh:
        items = parse_config_text(fh.read())
    items.update(overrides or {})
    return ExperimentConfig.from_mapping(items)


def build_objective(cfg: ExperimentConfig) -> Oracle:
    """Load the dataset once; the instance (and any subsample) is shared by every cell."""
    if cfg.dataset_kind == "table2":
        return table2_objective(cfg.table2_n, cfg.table2_eps)
    if cfg.dataset_kind == "random_graph":
        rng = np.random.default_rng(cfg.seed)
        return DomSetOracle(random_graph(cfg.graph_nodes, cfg.graph_edge_prob, rng, cfg.directed))
    if cfg.dataset_kind == "edge_list":
        return DomSetOracle(data_io.load_edge_list(cfg.dataset, cfg.directed))
    data = data_io.load_vectors(cfg.dataset, cfg.delimiter, cfg.preprocessing)
    ids = None
    if cfg.subsample_size is not None and cfg.subsample_size < data.n:
        ids = data_io.subsample(data.n, cfg.subsample_size, cfg.seed)
    return ExemplarOracle(data, ExemplarConfig(subsample_ids=ids))


@dataclass
class ExperimentRecord:
    algorithm: str
    subroutine: str
    k: int
    tau: int
    eta: int | None
    raw_value: float | None
    robust_value: float | None
    adversary_kind: str
    marginal_evals: int | None
    full_evals: int | None
    wall_time_ms: float | None
    seed: int
    status: str

    def sort_key(self):
        return (self.algorithm, self.k, self.tau)


CSV_FIELDS = [f.name for f in fields(ExperimentRecord)]


def cell_feasible(algorithm: str, k: int, tau: int, cfg: ExperimentConfig, n: int) -> bool:
    if k > n:
        return False
    if algorithm == "pro":
        return partition_layout(tau, cfg.eta).feasible(k)
    if algorithm == "osu":
        return osu_feasible(k, tau, cfg.osu_bucket_size)
    return True


def _solve(algorithm, oracle, k, tau, cfg, spec):
    if algorithm == "pro":
        return pro(oracle, k, tau, cfg.eta, spec)
    if algorithm == "osu":
        return osu(oracle, k, tau, cfg.osu_bucket_size, spec)
    return greedy_baseline(oracle, k, spec)


def run_cell(algorithm: str, k: int, tau: int, cfg: ExperimentConfig, oracle: Oracle) -> ExperimentRecord:
    spec = cfg.subroutine_spec()
    rec = ExperimentRecord(algorithm, spec.kind, k, tau, cfg.eta if algorithm == "pro" else None,
                           None, None, cfg.adversary, None, None, None, cfg.seed, "ok")
    if not cell_feasible(algorithm, k, tau, cfg, oracle.n) or tau > k:
        rec.status = "skipped_infeasible"
        return rec
    oracle.counter.reset()
    start = time.perf_counter()
    try:
        sol = _solve(algorithm, oracle, k, tau, cfg, spec)
    except (InfeasibleError, DomainError):
        rec.status = "skipped_infeasible"
        return rec
    elapsed = (time.perf_counter() - start) * 1000.0
    rec.full_evals, rec.marginal_evals = oracle.counter.snapshot()
    rec.raw_value = sol.raw_value
    if cfg.timing:
        rec.wall_time_ms = round(elapsed, 3)
    try:
        if cfg.adversary == "optimal":
            rec.robust_value = optimal_removal(oracle, sol.S, tau, node_budget=cfg.node_budget).residual_value
        else:
            rec.robust_value = greedy_removal(oracle, sol.S, tau).residual_value
    except ResourceError:
        rec.status = "adversary_budget_exceeded"
    return rec


def run_experiment(cfg: ExperimentConfig, oracle: Oracle | None = None) -> list[ExperimentRecord]:
    oracle = oracle if oracle is not None else build_objective(cfg)
    records = [run_cell(a, k, t, cfg, oracle)
               for a in cfg.algorithms for k in cfg.k_values for t in cfg.tau_values]
    return sorted(records, key=ExperimentRecord.sort_key)


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def records_to_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for rec in sorted(records, key=ExperimentRecord.sort_key):
        writer.writerow([_fmt(getattr(rec, name)) for name in CSV_FIELDS])
    return buf.getvalue()


def emit_csv(records, path) -> None:
    text = records_to_csv(records)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv(path) -> list[dict[str, str]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


def emit_bound_report(cfg: ExperimentConfig) -> str:
    """Guarantee landscape per (k, tau) before anything is run."""
    beta = cfg.subroutine_spec().beta
    lines = [f"# bound report: eta={cfg.eta} subroutine={cfg.subroutine} beta={beta}"]
    for k in cfg.k_values:
        for tau in cfg.tau_values:
            head = f"k={k} tau={tau}:"
            osu_ok = osu_feasible(k, tau, cfg.osu_bucket_size)
            osu_note = f"osu {'feasible' if osu_ok else 'infeasible'}"
            layout = partition_layout(tau, cfg.eta)
            if not layout.feasible(k):
                lines.append(f"{head} pro infeasible (|S0|={layout.s0_size} > k); {osu_note}")
                continue
            if beta is None:
                lines.append(f"{head} |S0|={layout.s0_size}; no certificate (subroutine has no known beta); {osu_note}")
                continue
            try:
                cert = theorem1_certificate(k, tau, cfg.eta, beta, layout.s0_size)
            except DomainError as exc:
                lines.append(f"{head} error: {exc}; {osu_note}")
                continue
            note = "" if tau >= 2 else " note: guarantee requires 2 <= tau"
            lines.append(
                f"{head} |S0|={layout.s0_size} factor={cert.factor:.6f} "
                f"tau_condition={cert.tau_condition} eta_condition={cert.eta_condition}; {osu_note}{note}")
    return "\n".join(lines) + "\n"
