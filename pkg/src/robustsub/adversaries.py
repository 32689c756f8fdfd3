"""Adversaries that remove up to tau elements from a solution."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

from .errors import DomainError, ResourceError
from .oracle import Oracle, as_element_set

DEFAULT_NODE_BUDGET = 10**7


@dataclass(frozen=True)
class RemovalResult:
    removed: frozenset
    residual_value: float
    kind: str
    nodes_explored: int = 0


def _check(oracle, S, tau):
    S = as_element_set(S, oracle.n)
    if tau < 0 or tau > len(S):
        raise DomainError(f"tau={tau} must lie in [0, |S|={len(S)}]")
    return S


def greedy_removal(oracle: Oracle, S: Iterable[int], tau: int) -> RemovalResult:
    """Remove, tau times, the element whose loss leaves the smallest value (ties: smallest id)."""
    S = _check(oracle, S, tau)
    rest = S
    removed: list[int] = []
    value = oracle.evaluate(rest)
    for _ in range(tau):
        best_e, best_v = None, None
        for e in sorted(rest):
            v = oracle.evaluate(rest - {e})
            if best_v is None or v < best_v:
                best_e, best_v = e, v
        rest = rest - {best_e}
        removed.append(best_e)
        value = best_v
    return RemovalResult(frozenset(removed), value, "greedy")


def optimal_removal(oracle: Oracle, S: Iterable[int], tau: int, prune: bool = True,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> RemovalResult:
    """Exact worst-case removal by depth-first branch-and-bound.

    Elements are branched in decreasing order of f(e | S - e). At a node with
    partial removal Z, remaining budget r and undecided pool C, the best any
    completion can reach is at least

        f(S - Z) - (sum of the r largest f(e | S - Z - C), e in C)

    since removing R from A costs a telescoping sum of gains, each bounded by
    the gain against the smaller set A - C. Nodes whose bound cannot beat the
    incumbent are cut; the incumbent starts from the greedy adversary.
    """
    S = _check(oracle, S, tau)
    incumbent = greedy_removal(oracle, S, tau)
    best_value = incumbent.residual_value
    best_removed = incumbent.removed
    if tau == 0:
        return RemovalResult(best_removed, best_value, "optimal", 1)

    full = oracle.evaluate(S)
    impact = {e: oracle.marginal_gain(e, S - {e}) for e in S}
    order = sorted(S, key=lambda e: (-impact[e], e))
    m = len(order)
    slack = 1e-9 * max(1.0, abs(full))
    nodes = 0

    # iterative DFS; each frame is (position in order, removed tuple, residual value)
    stack = [(0, (), full)]
    while stack:
        pos, Z, value = stack.pop()
        nodes += 1
        if nodes > node_budget:
            raise ResourceError(
                f"branch-and-bound exceeded {node_budget} nodes",
                incumbent=RemovalResult(best_removed, best_value, "optimal", nodes - 1))
        r = tau - len(Z)
        if value < best_value:
            best_value, best_removed = value, frozenset(Z)
        if r == 0 or pos == m:
            continue
        pool = order[pos:]
        if len(pool) <= r:
            # removing everything left is optimal by monotonicity
            rest = S - set(Z) - set(pool)
            v = oracle.evaluate(rest)
            if v < best_value:
                best_value, best_removed = v, frozenset(Z) | frozenset(pool)
            continue
        if prune:
            kept = S - set(Z) - set(pool)
            gains = sorted((oracle.marginal_gain(e, kept) for e in pool), reverse=True)
            if value - sum(gains[:r]) >= best_value + slack:
                continue
        e = order[pos]
        # exclude branch first on the stack so the include branch is explored first
        stack.append((pos + 1, Z, value))
        Zi = Z + (e,)
        stack.append((pos + 1, Zi, oracle.evaluate(S - set(Zi))))
    return RemovalResult(best_removed, best_value, "optimal", nodes)


def robust_value(oracle: Oracle, S: Iterable[int], tau: int, adversary: str = "optimal", **kwargs) -> float:
    if adversary == "optimal":
        return optimal_removal(oracle, S, tau, **kwargs).residual_value
    if adversary == "greedy":
        return greedy_removal(oracle, S, tau).residual_value
    raise DomainError(f"unknown adversary {adversary!r}")


def exhaustive_removal(oracle: Oracle, S: Iterable[int], tau: int) -> RemovalResult:
    """Minimum of f(S - Z) over all |Z| <= tau by enumeration (first minimizer in lex order)."""
    S = _check(oracle, S, tau)
    items = sorted(S)
    best_value, best_removed = None, frozenset()
    for r in range(tau + 1):
        for Z in combinations(items, r):
            v = oracle.evaluate(S - set(Z))
            if best_value is None or v < best_value:
                best_value, best_removed = v, frozenset(Z)
    return RemovalResult(best_removed, best_value, "exhaustive")


def brute_force_robust_opt(oracle: Oracle, k: int, tau: int,
                           ground: Iterable[int] | None = None) -> tuple[frozenset, float]:
    """Best size-k set under worst-case removal, by double enumeration.

    Limited to n <= 14 and k <= 6. Ties resolve to the lexicographically smallest set.
    """
    V = sorted(range(oracle.n) if ground is None else as_element_set(ground, oracle.n))
    if len(V) > 14 or k > 6:
        raise ResourceError(f"brute force limited to n <= 14, k <= 6 (got n={len(V)}, k={k})")
    if k > len(V):
        raise DomainError(f"k={k} exceeds ground set size {len(V)}")
    if not (0 <= tau <= k):
        raise DomainError(f"tau={tau} must lie in [0, k={k}]")
    best_set, best_value = None, None
    for S in combinations(V, k):
        v = exhaustive_removal(oracle, S, tau).residual_value
        if best_value is None or v > best_value:
            best_set, best_value = frozenset(S), v
    return best_set, best_value
