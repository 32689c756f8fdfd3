import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from robustsub import ModularOracle, random_tabular
from robustsub.objectives import random_graph, DomSetOracle

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def modular3():
    return ModularOracle([3.0, 2.0, 1.0], labels=("a", "b", "c"))


def tabular_corpus(count, seed=0, n_range=(3, 10)):
    """Deterministic corpus of random monotone submodular tables."""
    rng = np.random.default_rng(seed)
    return [random_tabular(int(rng.integers(n_range[0], n_range[1] + 1)), rng) for _ in range(count)]


def graph_oracle(n, p, seed):
    return DomSetOracle(random_graph(n, p, np.random.default_rng(seed)))
