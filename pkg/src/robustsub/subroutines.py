"""Greedy-family subroutines returning ordered solutions.

All four share one convention: among equal marginal gains the smallest
element id wins, and a run always returns exactly ``k_prime`` elements even
when every remaining gain is zero.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ConfigError, InfeasibleError
from .oracle import Oracle, as_element_set

KINDS = ("greedy", "lazy_greedy", "thresholding", "stochastic")


@dataclass(frozen=True)
class SubroutineSpec:
    kind: str = "lazy_greedy"
    epsilon: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError(f"unknown subroutine {self.kind!r}; expected one of {KINDS}")
        needs_eps = self.kind in ("thresholding", "stochastic")
        if needs_eps:
            if self.epsilon is None or not (0.0 < self.epsilon < 1.0):
                raise ConfigError(f"{self.kind} needs epsilon in (0, 1), got {self.epsilon}")
        elif self.epsilon is not None:
            raise ConfigError(f"{self.kind} takes no epsilon")
        if self.seed < 0:
            raise ConfigError("seed must be non-negative")

    @property
    def beta(self) -> float | None:
        """Iterative-property constant, or None where no guarantee is known (stochastic)."""
        if self.kind in ("greedy", "lazy_greedy"):
            return 1.0
        if self.kind == "thresholding":
            return 1.0 / (1.0 - self.epsilon)
        return None


@dataclass(frozen=True)
class OrderedSolution:
    elements: tuple[int, ...]
    values: tuple[float, ...]  # f(A_1), ..., f(A_l)

    def __len__(self):
        return len(self.elements)

    def prefix(self, i: int) -> frozenset:
        return frozenset(self.elements[:i])

    @property
    def value(self) -> float:
        return self.values[-1] if self.values else 0.0


def _argmax(gains, candidates):
    best_e, best_g = None, -math.inf
    for e, g in zip(candidates, gains):
        if g > best_g:
            best_e, best_g = e, g
    return best_e, best_g


def naive_greedy(oracle: Oracle, ground: list[int], k: int) -> OrderedSolution:
    remaining = sorted(ground)
    chosen: list[int] = []
    values: list[float] = []
    S = frozenset()
    total = 0.0
    for _ in range(k):
        e, g = _argmax(oracle.marginal_gains(remaining, S), remaining)
        remaining.remove(e)
        chosen.append(e)
        S = S | {e}
        total += g
        values.append(total)
    return OrderedSolution(tuple(chosen), tuple(values))


def lazy_greedy(oracle: Oracle, ground: list[int], k: int) -> OrderedSolution:
    """Greedy with stale upper bounds kept in a heap (Minoux).

    Heap entries are (-bound, id, round). An entry refreshed in the current
    round that sits at the top is the exact argmax, ties going to the smaller id.
    """
    chosen: list[int] = []
    values: list[float] = []
    if k == 0:
        return OrderedSolution((), ())
    S = frozenset()
    heap = [(-g, e, 0) for e, g in zip(ground, oracle.marginal_gains(ground, S))]
    heapq.heapify(heap)
    total = 0.0
    rnd = 0
    while len(chosen) < k:
        neg, e, stamp = heap[0]
        if stamp == rnd:
            heapq.heappop(heap)
            chosen.append(e)
            S = S | {e}
            total += -neg
            values.append(total)
            rnd += 1
            continue
        g = oracle.marginal_gain(e, S)
        heapq.heapreplace(heap, (-g, e, rnd))
    return OrderedSolution(tuple(chosen), tuple(values))


def thresholding_greedy(oracle: Oracle, ground: list[int], k: int, epsilon: float) -> OrderedSolution:
    """Decreasing-threshold greedy; each pick is within (1 - epsilon) of the best gain."""
    remaining = sorted(ground)
    chosen: list[int] = []
    values: list[float] = []
    if k == 0:
        return OrderedSolution((), ())
    S = frozenset()
    total = 0.0
    w_start = max(oracle.marginal_gains(remaining, S))
    w = w_start
    floor = (epsilon / len(remaining)) * w_start
    while len(chosen) < k:
        for e in list(remaining):
            g = oracle.marginal_gain(e, S)
            if g >= w:
                remaining.remove(e)
                chosen.append(e)
                S = S | {e}
                total += g
                values.append(total)
                if len(chosen) == k:
                    break
        w *= 1.0 - epsilon
        if w < floor:
            break
    # fill what the thresholds did not reach with exact greedy steps
    while len(chosen) < k:
        e, g = _argmax(oracle.marginal_gains(remaining, S), remaining)
        remaining.remove(e)
        chosen.append(e)
        S = S | {e}
        total += g
        values.append(total)
    return OrderedSolution(tuple(chosen), tuple(values))


def stochastic_sample_size(ground_size: int, k: int, epsilon: float) -> int:
    return math.ceil((ground_size / k) * math.log(1.0 / epsilon))


def stochastic_greedy(oracle: Oracle, ground: list[int], k: int, epsilon: float,
                      rng: np.random.Generator) -> OrderedSolution:
    remaining = sorted(ground)
    chosen: list[int] = []
    values: list[float] = []
    if k == 0:
        return OrderedSolution((), ())
    size = max(1, stochastic_sample_size(len(remaining), k, epsilon))
    S = frozenset()
    total = 0.0
    for _ in range(k):
        s = min(size, len(remaining))
        idx = np.sort(rng.choice(len(remaining), size=s, replace=False))
        sample = [remaining[i] for i in idx]
        e, g = _argmax(oracle.marginal_gains(sample, S), sample)
        remaining.remove(e)
        chosen.append(e)
        S = S | {e}
        total += g
        values.append(total)
    return OrderedSolution(tuple(chosen), tuple(values))


def run_subroutine(spec: SubroutineSpec, oracle: Oracle, ground: Iterable[int], k_prime: int,
                   rng: np.random.Generator | None = None) -> OrderedSolution:
    """Run subroutine ``spec`` on ``ground`` for ``k_prime`` picks.

    ``rng`` is only used by the stochastic variant; when omitted a generator
    seeded from ``spec.seed`` is created, so repeated calls repeat samples.
    """
    ground = sorted(as_element_set(ground, oracle.n))
    if k_prime < 0:
        raise InfeasibleError(f"negative cardinality {k_prime}")
    if k_prime > len(ground):
        raise InfeasibleError(f"cannot pick {k_prime} elements from a ground set of {len(ground)}")
    if spec.kind == "greedy":
        return naive_greedy(oracle, ground, k_prime)
    if spec.kind == "lazy_greedy":
        return lazy_greedy(oracle, ground, k_prime)
    if spec.kind == "thresholding":
        return thresholding_greedy(oracle, ground, k_prime, spec.epsilon)
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    return stochastic_greedy(oracle, ground, k_prime, spec.epsilon, rng)


def verify_beta_iterative(solution: OrderedSolution, oracle: Oracle, ground: Iterable[int],
                          beta: float, tol: float = 1e-9) -> tuple[bool, int | None]:
    """Check every step gains at least 1/beta of the best available gain.

    Returns ``(True, None)`` or ``(False, i)`` with ``i`` the first offending
    0-based step. Exhaustive over ``ground``; meant for small instances.
    """
    ground = sorted(ground)
    for i, v in enumerate(solution.elements):
        A = solution.prefix(i)
        step = oracle.evaluate(A | {v}) - oracle.evaluate(A)
        best = max(oracle.marginal_gain(u, A) for u in ground)
        if step < best / beta - tol:
            return False, i
    return True, None


def lemma1_bound(l: int, k: int, beta: float, opt_value: float) -> float:
    """Lower bound (1 - exp(-l / (beta k))) * OPT on the value of an l-step prefix."""
    if l <= 0:
        return 0.0
    return (1.0 - math.exp(-l / (beta * k))) * opt_value
