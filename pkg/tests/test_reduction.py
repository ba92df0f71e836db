"""Tests for split/reduce/lift."""

import numpy as np
import pytest

from maxcut.errors import InputError
from maxcut.instance import PrimalProblem, primal_value
from maxcut.oracle import brute_force_primal
from maxcut.reduction import lift_solution, reduce_problem, split_feasible

from .conftest import random_problem

THREE = PrimalProblem(Q=[[0.0, 1.0, 2.0], [1.0, 0.0, 3.0], [2.0, 3.0, 0.0]], c=[1.0, 1.0, 1.0])


class TestSplitFeasible:
    def test_thresholding(self):
        fixed, free = split_feasible([0.98, -1.01, 0.35], tau=0.1)
        np.testing.assert_array_equal(fixed, [1.0, -1.0, 0.0])
        assert free == [2]

    def test_all_feasible(self):
        fixed, free = split_feasible([1.0, -1.0], tau=0.1)
        np.testing.assert_array_equal(fixed, [1.0, -1.0])
        assert free == []

    def test_forced_progress_fixes_closest(self):
        fixed, free = split_feasible([0.3, 0.5], tau=0.1)
        np.testing.assert_array_equal(fixed, [0.0, 1.0])
        assert free == [0]

    def test_forced_progress_negative(self):
        fixed, free = split_feasible([0.1, -0.6, 0.2], tau=0.05)
        np.testing.assert_array_equal(fixed, [0.0, -1.0, 0.0])
        assert free == [0, 2]

    def test_min_fixed_takes_closest_first(self):
        fixed, free = split_feasible([0.1, -0.6, 0.2, 1.3], tau=0.05, min_fixed=2)
        np.testing.assert_array_equal(fixed, [0.0, -1.0, 0.0, 1.0])
        assert free == [0, 2]

    def test_min_fixed_counts_threshold_hits(self):
        fixed, free = split_feasible([0.99, 0.2, 0.5], tau=0.05, min_fixed=2)
        np.testing.assert_array_equal(fixed, [1.0, 0.0, 1.0])
        assert free == [1]

    def test_min_fixed_capped_at_dimension(self):
        fixed, free = split_feasible([0.2, -0.3], tau=0.05, min_fixed=5)
        np.testing.assert_array_equal(fixed, [1.0, -1.0])
        assert free == []

    def test_rejects_zero_min_fixed(self):
        with pytest.raises(InputError, match="min_fixed"):
            split_feasible([0.5], tau=0.1, min_fixed=0)

    def test_partition_invariants(self, rng):
        for _ in range(50):
            x_bar = rng.uniform(-1.5, 1.5, size=int(rng.integers(1, 12)))
            fixed, free = split_feasible(x_bar, tau=0.1)
            fixed_idx = set(np.flatnonzero(fixed))
            assert fixed_idx.isdisjoint(free)
            assert fixed_idx | set(free) == set(range(x_bar.size))
            assert fixed_idx
            assert set(np.unique(fixed[list(fixed_idx)])) <= {-1.0, 1.0}

    @pytest.mark.parametrize("tau", [0.0, 0.5, -0.1])
    def test_rejects_bad_tau(self, tau):
        with pytest.raises(InputError, match="tau"):
            split_feasible([0.5], tau=tau)


class TestReduceProblem:
    def test_substitution(self):
        step = reduce_problem(THREE, [1.0, -1.0, 0.0], [2])
        np.testing.assert_array_equal(step.reduced_problem.Q, [[0.0]])
        np.testing.assert_array_equal(step.reduced_problem.c, [2.0])
        assert step.m == 1
        assert step.reduced_problem.vertices == (THREE.vertices[2],)

    def test_identity_reduction(self):
        step = reduce_problem(THREE, np.zeros(3), [0, 1, 2])
        np.testing.assert_array_equal(step.reduced_problem.Q, THREE.Q)
        np.testing.assert_array_equal(step.reduced_problem.c, THREE.c)
        assert step.constant == 0.0

    def test_objective_decomposes(self, rng):
        for _ in range(10):
            prob = random_problem(rng, 6)
            fixed, free = split_feasible(rng.uniform(-1.2, 1.2, size=6), tau=0.3)
            if not free:
                continue
            step = reduce_problem(prob, fixed, free)
            for _ in range(100):
                x_h = rng.choice([-1.0, 1.0], size=len(free))
                full = primal_value(prob, lift_solution(fixed, free, x_h))
                reduced = primal_value(step.reduced_problem, x_h) + step.constant
                assert full - reduced == pytest.approx(0.0, abs=1e-12)

    def test_reduced_optimum_lifts_to_best_completion(self, rng):
        prob = random_problem(rng, 8)
        fixed = np.array([1.0, -1.0, 0, 0, 1.0, 0, 0, 0])
        free = [2, 3, 5, 6, 7]
        step = reduce_problem(prob, fixed, free)
        x_h, _ = brute_force_primal(step.reduced_problem, workers=1)
        lifted = primal_value(prob, lift_solution(fixed, free, x_h))
        best = min(
            primal_value(prob, lift_solution(fixed, free, 1.0 - 2.0 * ((code >> np.arange(5)) & 1)))
            for code in range(32)
        )
        assert lifted == pytest.approx(best)

    def test_empty_free_set(self):
        with pytest.raises(InputError, match="nothing to reduce"):
            reduce_problem(THREE, [1.0, -1.0, 1.0], [])

    def test_inconsistent_split(self):
        with pytest.raises(InputError):
            reduce_problem(THREE, [1.0, 0.0, 0.0], [2])

    def test_wrong_length(self):
        with pytest.raises(InputError):
            reduce_problem(THREE, [1.0, 0.0], [1])


class TestLiftSolution:
    def test_fill_free(self):
        np.testing.assert_array_equal(
            lift_solution([1.0, -1.0, 0.0], [2], [-1.0]), [1.0, -1.0, -1.0]
        )

    def test_nothing_free(self):
        np.testing.assert_array_equal(lift_solution([1.0, -1.0], [], []), [1.0, -1.0])

    def test_split_then_lift_rounds(self):
        x_bar = np.array([0.97, -0.2, -1.03, 0.4])
        fixed, free = split_feasible(x_bar, tau=0.1)
        lifted = lift_solution(fixed, free, np.sign(x_bar[free]))
        np.testing.assert_array_equal(lifted, np.sign(x_bar))

    def test_length_mismatch(self):
        with pytest.raises(InputError):
            lift_solution([1.0, 0.0, 0.0], [1, 2], [1.0])
