import numpy as np
import pytest
from hypothesis import given, strategies as st

from robustsub import (DomainError, ResourceError, brute_force_robust_opt,
                       exhaustive_removal, greedy_baseline, greedy_removal, optimal_removal, osu,
                       pro, random_tabular, robust_value, table2_objective,
                       TabularObjective)
from robustsub.objectives import all_subsets

from conftest import graph_oracle, tabular_corpus

T2 = table2_objective(10, 0.5)


class TestGreedyRemoval:
    def test_counterexample(self):
        res = greedy_removal(T2, {0, 1}, 1)
        assert res.removed == {0} and res.residual_value == 0.5

    def test_tau_zero(self):
        res = greedy_removal(T2, {0, 2}, 0)
        assert res.removed == set() and res.residual_value == 10

    def test_modular(self, modular3):
        res = greedy_removal(modular3, {0, 1, 2}, 1)
        assert res.removed == {0} and res.residual_value == 3

    def test_too_many(self):
        with pytest.raises(DomainError):
            greedy_removal(T2, {0}, 2)


class TestOptimalRemoval:
    def test_counterexample(self):
        res = optimal_removal(T2, {0, 2}, 1)
        assert res.removed == {0} and res.residual_value == 9
        res = optimal_removal(T2, {1, 2}, 1)
        assert res.removed == {2} and res.residual_value == 0.5

    def test_remove_everything(self):
        f = graph_oracle(20, 0.2, 1)
        assert optimal_removal(f, {1, 4, 7, 9}, 4).residual_value == 0

    def test_budget_carries_incumbent(self):
        f = graph_oracle(40, 0.1, 2)
        S = set(greedy_baseline(f, 14).S)
        with pytest.raises(ResourceError) as info:
            optimal_removal(f, S, 4, prune=False, node_budget=50)
        inc = info.value.incumbent
        assert inc is not None and inc.removed <= S
        assert inc.residual_value == f.evaluate(S - inc.removed)

    def test_beats_greedy_adversary(self):
        # coverage sets a={1..4}, b={6,7,8}, c={1..5}: greedy drops b first (leaves 5)
        # and ends at 4, while keeping only b leaves 3
        sets = [set(range(1, 5)), {6, 7, 8}, set(range(1, 6))]
        table = {S: len(set().union(*(sets[e] for e in S))) for S in all_subsets(3)}
        f = TabularObjective(3, table)
        assert greedy_removal(f, {0, 1, 2}, 2).residual_value == 4
        assert optimal_removal(f, {0, 1, 2}, 2).residual_value == 3


def _instances():
    for f in tabular_corpus(12, seed=21, n_range=(6, 12)):
        yield f
    for seed in range(6):
        yield graph_oracle(30, 0.12, seed)


@pytest.mark.parametrize("f", list(_instances()), ids=lambda f: type(f).__name__)
def test_branch_and_bound_is_exact(f):
    rng = np.random.default_rng(f.n)
    for _ in range(4):
        size = int(rng.integers(1, min(12, f.n) + 1))
        S = set(rng.choice(f.n, size=size, replace=False).tolist())
        for tau in range(0, min(3, size) + 1):
            exact = exhaustive_removal(f, S, tau).residual_value
            pruned = optimal_removal(f, S, tau)
            plain = optimal_removal(f, S, tau, prune=False)
            assert pruned.residual_value == exact == plain.residual_value
            assert pruned.nodes_explored <= plain.nodes_explored
            assert f.evaluate(S - pruned.removed) == pruned.residual_value
            assert len(pruned.removed) <= tau and pruned.removed <= S
            assert greedy_removal(f, S, tau).residual_value >= exact


@given(seed=st.integers(0, 10**6), size=st.integers(2, 12))
def test_monotone_in_tau(seed, size):
    f = graph_oracle(25, 0.15, seed)
    S = set(range(size))
    values = [robust_value(f, S, t) for t in range(min(size, 4) + 1)]
    assert values == sorted(values, reverse=True)
    assert values[0] == f.evaluate(S)


class TestBruteForce:
    def test_counterexample(self):
        assert brute_force_robust_opt(T2, 2, 1) == ({0, 2}, 9)

    def test_k_equals_tau(self):
        f = graph_oracle(8, 0.3, 0)
        assert brute_force_robust_opt(f, 3, 3)[1] == 0

    def test_modular(self, modular3):
        # pairs {a,b}: 2, {a,c}: 1, {b,c}: 1
        assert brute_force_robust_opt(modular3, 2, 1) == ({0, 1}, 2)

    def test_limits(self):
        with pytest.raises(ResourceError):
            brute_force_robust_opt(graph_oracle(15, 0.2, 0), 2, 1)
        with pytest.raises(ResourceError):
            brute_force_robust_opt(graph_oracle(10, 0.2, 0), 7, 1)

    @pytest.mark.parametrize("seed", range(5))
    def test_dominates_algorithms(self, seed):
        f = random_tabular(9, np.random.default_rng(seed))
        for k, tau in [(3, 1), (4, 1), (5, 2)]:
            _, best = brute_force_robust_opt(f, k, tau)
            for sol in (greedy_baseline(f, k), pro(f, k, tau), osu(f, k, tau)
                        if tau * tau <= k else greedy_baseline(f, k)):
                assert best >= robust_value(f, sol.S, tau)


def test_robust_value_wrappers():
    assert robust_value(T2, {0, 2}, 1, "optimal") == 9
    assert robust_value(T2, {0, 2}, 1, "greedy") == 9
    assert exhaustive_removal(T2, {0, 2}, 1).residual_value == 9
    assert robust_value(T2, {0, 2}, 0) == 10
    with pytest.raises(DomainError):
        robust_value(T2, {0, 2}, 1, "bogus")
