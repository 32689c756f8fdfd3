"""Robust solvers: the partitioned algorithm (PRo), the OSU baseline and plain greedy."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DomainError, InfeasibleError
from .oracle import Oracle, as_element_set
from .subroutines import OrderedSolution, SubroutineSpec, run_subroutine

DEFAULT_SPEC = SubroutineSpec("lazy_greedy")


def ceil_log2(x: int) -> int:
    """Exact ceil(log2 x) for integers x >= 1."""
    if x < 1:
        raise DomainError(f"ceil_log2 needs x >= 1, got {x}")
    return (x - 1).bit_length()


@dataclass(frozen=True)
class PartitionLayout:
    tau: int
    eta: int
    partitions: tuple[tuple[int, int], ...]  # (bucket_count, bucket_size) for i = 0..ceil(log2 tau)

    @property
    def s0_size(self) -> int:
        return sum(count * size for count, size in self.partitions)

    def feasible(self, k: int) -> bool:
        return self.s0_size <= k

    def size_bound(self, k: int) -> float:
        """3 * eta * tau * (log2 k + 2)."""
        return 3 * self.eta * self.tau * (math.log2(k) + 2)


def _layout(tau: int, eta: int) -> PartitionLayout:
    if tau == 0:
        return PartitionLayout(0, eta, ())
    parts = tuple((-(-tau // 2**i), 2**i * eta) for i in range(ceil_log2(tau) + 1))
    return PartitionLayout(tau, eta, parts)


def max_feasible_tau(k: int, eta: int) -> int:
    """Largest tau whose robust part fits in k (0 if even tau = 1 does not)."""
    tau = 0
    while _layout(tau + 1, eta).s0_size <= k:
        tau += 1
    return tau


def partition_layout(tau: int, eta: int, k: int | None = None) -> PartitionLayout:
    """Bucket layout of the robust part; raises InfeasibleError if it exceeds k."""
    if tau < 0 or eta < 1:
        raise DomainError(f"need tau >= 0 and eta >= 1, got tau={tau}, eta={eta}")
    layout = _layout(tau, eta)
    if k is not None and not layout.feasible(k):
        raise InfeasibleError(
            f"robust part needs {layout.s0_size} > k={k} elements; "
            f"largest feasible tau for k={k}, eta={eta} is {max_feasible_tau(k, eta)}")
    return layout


@dataclass(frozen=True)
class Bucket:
    partition: int
    index: int  # 1-based within its partition
    solution: OrderedSolution

    @property
    def members(self) -> frozenset:
        return frozenset(self.solution.elements)


@dataclass
class RobustSolution:
    S: frozenset
    S0: frozenset
    S1: frozenset
    buckets: list[Bucket]
    raw_value: float
    tail: OrderedSolution | None = None
    layout: PartitionLayout | None = None

    def partition_buckets(self, i: int) -> list[Bucket]:
        return [b for b in self.buckets if b.partition == i]


def _ground(oracle: Oracle, ground) -> frozenset:
    return frozenset(range(oracle.n)) if ground is None else as_element_set(ground, oracle.n)


def _finish(oracle, V, k, spec, rng, buckets, layout=None) -> RobustSolution:
    S0 = frozenset().union(*(b.members for b in buckets)) if buckets else frozenset()
    tail = run_subroutine(spec, oracle, V - S0, k - len(S0), rng=rng)
    S1 = frozenset(tail.elements)
    S = S0 | S1
    return RobustSolution(S, S0, S1, buckets, oracle.evaluate(S), tail, layout)


def pro(oracle: Oracle, k: int, tau: int, eta: int = 1, spec: SubroutineSpec = DEFAULT_SPEC,
        ground: Iterable[int] | None = None) -> RobustSolution:
    """Partitioned robust maximization.

    Partition i = 0..ceil(log2 tau) holds ceil(tau / 2^i) buckets of 2^i * eta
    elements. Every bucket is a fresh run of the subroutine with the original
    objective on the elements not yet placed; the remaining k - |S0| slots are
    filled by one more run on what is left.
    """
    V = _ground(oracle, ground)
    if k > len(V):
        raise DomainError(f"k={k} exceeds ground set size {len(V)}")
    layout = partition_layout(tau, eta, k)
    rng = np.random.default_rng(spec.seed)
    buckets: list[Bucket] = []
    used: frozenset = frozenset()
    for i, (count, size) in enumerate(layout.partitions):
        for j in range(1, count + 1):
            sol = run_subroutine(spec, oracle, V - used, size, rng=rng)
            buckets.append(Bucket(i, j, sol))
            used = used | frozenset(sol.elements)
    return _finish(oracle, V, k, spec, rng, buckets, layout)


def osu_feasible(k: int, tau: int, bucket_size: int | None = None) -> bool:
    size = tau if bucket_size is None else bucket_size
    return tau * size <= k


def osu(oracle: Oracle, k: int, tau: int, bucket_size: int | None = None,
        spec: SubroutineSpec = DEFAULT_SPEC, ground: Iterable[int] | None = None) -> RobustSolution:
    """tau equal buckets (default size tau) followed by one run of size k - tau * bucket_size."""
    V = _ground(oracle, ground)
    if k > len(V):
        raise DomainError(f"k={k} exceeds ground set size {len(V)}")
    size = tau if bucket_size is None else bucket_size
    if tau < 0 or size < 0:
        raise DomainError("tau and bucket_size must be non-negative")
    if not osu_feasible(k, tau, size):
        raise InfeasibleError(f"OSU robust part needs tau * bucket_size = {tau * size} > k={k}")
    rng = np.random.default_rng(spec.seed)
    buckets: list[Bucket] = []
    used: frozenset = frozenset()
    for j in range(1, tau + 1):
        sol = run_subroutine(spec, oracle, V - used, size, rng=rng)
        buckets.append(Bucket(0, j, sol))
        used = used | frozenset(sol.elements)
    return _finish(oracle, V, k, spec, rng, buckets)


def greedy_baseline(oracle: Oracle, k: int, spec: SubroutineSpec = DEFAULT_SPEC,
                    ground: Iterable[int] | None = None) -> RobustSolution:
    V = _ground(oracle, ground)
    if k > len(V):
        raise DomainError(f"k={k} exceeds ground set size {len(V)}")
    return _finish(oracle, V, k, spec, np.random.default_rng(spec.seed), [])


@dataclass(frozen=True)
class BoundCertificate:
    k: int
    tau: int
    eta: float
    beta: float
    s0_size: int
    factor: float
    tau_condition: bool  # 2 <= tau <= k / (3 eta (log2 k + 2))
    eta_condition: bool  # eta >= 4 (log2 k + 1)

    @property
    def conditions_met(self) -> bool:
        return self.tau_condition and self.eta_condition


def theorem1_certificate(k: int, tau: int, eta: float, beta: float, s0_size: int) -> BoundCertificate:
    """Approximation factor guaranteed for a subroutine with iterative constant ``beta``.

    factor = P / (1 + P),
    P = eta / (5 beta^3 ceil(log2 tau) + eta) * (1 - exp(-(k - |S0|) / (beta (k - tau))))
    """
    if tau < 1:
        raise DomainError(f"certificate needs tau >= 1, got {tau}")
    if k <= tau:
        raise DomainError(f"certificate needs k > tau, got k={k}, tau={tau}")
    if beta < 1:
        raise DomainError(f"beta must be >= 1, got {beta}")
    if s0_size > k:
        raise InfeasibleError(f"robust part size {s0_size} exceeds k={k}")
    partition_term = eta / (5 * beta**3 * ceil_log2(tau) + eta)
    greedy_term = -math.expm1(-(k - s0_size) / (beta * (k - tau)))
    P = partition_term * greedy_term
    lk = math.log2(k)
    return BoundCertificate(
        k=k, tau=tau, eta=eta, beta=beta, s0_size=s0_size,
        factor=P / (1 + P),
        tau_condition=2 <= tau <= k / (3 * eta * (lk + 2)),
        eta_condition=eta >= 4 * (lk + 1),
    )


def asymptotic_factor(beta: float = 1.0) -> float:
    """Limit of the certificate factor as k grows: (1 - e^{-1/beta}) / (2 - e^{-1/beta})."""
    x = math.exp(-1.0 / beta)
    return (1 - x) / (2 - x)
