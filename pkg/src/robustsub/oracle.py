"""Set-function oracles with evaluation counting.

Every objective in the package derives from :class:`Oracle`. Subclasses
implement ``_value`` (and optionally a faster ``_gain``); the public
``evaluate`` / ``marginal_gain`` methods do range checking and bump the
shared :class:`EvalCounter`.

Sets are passed around as ``frozenset`` of dense integer ids.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DomainError

ElementSet = frozenset


@dataclass
class EvalCounter:
    full_evals: int = 0
    marginal_evals: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def add_full(self, count: int = 1) -> None:
        with self._lock:
            self.full_evals += count

    def add_marginal(self, count: int = 1) -> None:
        with self._lock:
            self.marginal_evals += count

    def reset(self) -> None:
        with self._lock:
            self.full_evals = 0
            self.marginal_evals = 0

    def snapshot(self) -> tuple[int, int]:
        with self._lock:
            return self.full_evals, self.marginal_evals


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise DomainError(f"ground set must be non-empty, got n={self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise DomainError("labels must have one entry per element")

    def ids(self) -> range:
        return range(self.n)

    def label(self, e: int) -> str:
        return self.labels[e] if self.labels is not None else str(e)


def as_element_set(items: Iterable[int], n: int) -> frozenset:
    s = items if isinstance(items, frozenset) else frozenset(items)
    for e in s:
        if not (0 <= e < n) or isinstance(e, bool):
            raise DomainError(f"element {e!r} outside ground set of size {n}")
    return s


class Oracle:
    """Normalized monotone submodular set function on ``range(n)``."""

    def __init__(self, n: int, labels: Sequence[str] | None = None, counter: EvalCounter | None = None):
        self.ground = GroundSet(n, tuple(labels) if labels is not None else None)
        self.counter = counter if counter is not None else EvalCounter()

    @property
    def n(self) -> int:
        return self.ground.n

    # subclass hooks -------------------------------------------------------
    def _value(self, S: frozenset) -> float:
        raise NotImplementedError

    def _gain(self, e: int, S: frozenset) -> float:
        return self._value(S | {e}) - self._value(S)

    # public contract ------------------------------------------------------
    def evaluate(self, S: Iterable[int]) -> float:
        S = as_element_set(S, self.n)
        self.counter.add_full()
        if not S:
            return 0.0
        return float(self._value(S))

    def marginal_gain(self, e: int, S: Iterable[int]) -> float:
        if not (0 <= e < self.n):
            raise DomainError(f"element {e!r} outside ground set of size {self.n}")
        S = as_element_set(S, self.n)
        self.counter.add_marginal()
        if e in S:
            return 0.0
        return float(self._gain(e, S))

    def marginal_gains(self, candidates: Sequence[int], S: Iterable[int]) -> list[float]:
        """Gains of each candidate w.r.t. ``S``, in candidate order."""
        S = as_element_set(S, self.n)
        return [self.marginal_gain(e, S) for e in candidates]

    def conditional_view(self, base: Iterable[int]) -> "ConditionalOracle":
        return ConditionalOracle(self, base)


class ConditionalOracle(Oracle):
    """g(S) = f(S | base) - f(base). Shares the parent's counter."""

    def __init__(self, parent: Oracle, base: Iterable[int]):
        super().__init__(parent.n, parent.ground.labels, counter=parent.counter)
        self.parent = parent
        self.base = as_element_set(base, parent.n)
        self._base_value = parent._value(self.base) if self.base else 0.0

    def _value(self, S):
        return self.parent._value(S | self.base) - self._base_value

    def _gain(self, e, S):
        if e in self.base:
            return 0.0
        return self.parent._gain(e, S | self.base)


class ModularOracle(Oracle):
    """f(S) = sum of non-negative per-element weights."""

    def __init__(self, weights: Sequence[float], labels=None):
        if any(w < 0 for w in weights):
            raise DomainError("modular weights must be non-negative")
        super().__init__(len(weights), labels)
        self.weights = tuple(float(w) for w in weights)

    def _value(self, S):
        return sum(self.weights[e] for e in sorted(S))

    def _gain(self, e, S):
        return self.weights[e]
