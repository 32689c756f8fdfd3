"""Robust monotone submodular maximization under worst-case element removal."""
from .adversaries import (RemovalResult, brute_force_robust_opt, exhaustive_removal, greedy_removal,
                          optimal_removal, robust_value)
from .errors import ConfigError, DomainError, InfeasibleError, ParseError, ResourceError
from .objectives import (DomSetOracle, ExemplarConfig, ExemplarOracle, Graph, TabularObjective,
                         VectorDataset, domset_value, exemplar_value, random_tabular, table2_objective)
from .oracle import EvalCounter, GroundSet, ModularOracle, Oracle
from .solvers import (BoundCertificate, PartitionLayout, RobustSolution, greedy_baseline, osu,
                      partition_layout, pro, theorem1_certificate)
from .subroutines import (OrderedSolution, SubroutineSpec, lemma1_bound, run_subroutine,
                          verify_beta_iterative)

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate", "ConfigError", "DomSetOracle", "DomainError", "EvalCounter", "ExemplarConfig",
    "ExemplarOracle", "Graph", "GroundSet", "InfeasibleError", "ModularOracle", "Oracle",
    "OrderedSolution", "ParseError", "PartitionLayout", "RemovalResult", "ResourceError",
    "RobustSolution", "SubroutineSpec", "TabularObjective", "VectorDataset", "brute_force_robust_opt",
    "domset_value", "exemplar_value", "exhaustive_removal", "greedy_baseline", "greedy_removal",
    "lemma1_bound", "optimal_removal", "osu", "partition_layout", "pro", "random_tabular",
    "robust_value", "run_subroutine", "table2_objective", "theorem1_certificate", "verify_beta_iterative",
]
