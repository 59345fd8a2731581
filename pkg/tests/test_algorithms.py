import math

import numpy as np
import pytest

import swgsemo.algorithms
from swgsemo.algorithms import (AlgorithmConfig, SelectionEvent, gsemo_run,
                                recommended_tmax_general, recommended_tmax_uniform,
                                sliding_selection, sw_gsemo_run)
from swgsemo.core import BitVector, Individual, ObjectiveVector, ParetoArchive
from swgsemo.mutation import make_rng
from swgsemo.problems import CoverageInstance, ProblemInstance, brute_force_optimum

from _helpers import archive_vectors, er_graph, ind, star_graph


def star_instance(budget=1.0):
    return CoverageInstance.from_graph(star_graph(3), np.ones(4), budget)


class TestRecommendedTmax:
    def test_uniform_frozen_values(self):
        # oracle: direct formula evaluation, ceil(4 e r n ln n)
        assert recommended_tmax_uniform(100, 10) == 50073
        assert recommended_tmax_uniform(2, 1) == 16
        assert recommended_tmax_uniform(12, 3) == 973
        assert recommended_tmax_uniform(100, 10) == math.ceil(4 * math.e * 1000 * math.log(100))

    def test_uniform_monotone_in_r(self):
        for r in range(1, 8):
            assert recommended_tmax_uniform(50, r + 1) > recommended_tmax_uniform(50, r)

    def test_uniform_rejects_degenerate_dimension(self):
        with pytest.raises(ValueError):
            recommended_tmax_uniform(1, 1)
        with pytest.raises(ValueError):
            recommended_tmax_uniform(10, 0)

    def test_general_frozen_value(self):
        # ceil(2 e 100 50 ln 150), the inner product being 136203.188...
        assert recommended_tmax_general(100, 50, 1) == 136204

    def test_general_reduces_to_budget_free_form_when_delta_equals_budget(self):
        for n in (5, 40, 300):
            assert recommended_tmax_general(n, 7.0, 7.0) == math.ceil(
                2 * math.e * n * math.log(n + 1))

    def test_general_depends_only_on_budget_delta_ratio(self):
        assert recommended_tmax_general(64, 10, 0.5) == recommended_tmax_general(64, 40, 2.0)

    def test_general_rejects_nonpositive_delta(self):
        with pytest.raises(ValueError, match="delta"):
            recommended_tmax_general(10, 5, 0)
        with pytest.raises(ValueError, match="budget"):
            recommended_tmax_general(10, 0, 1)


def ladder_archive(max_cost=10):
    archive = ParetoArchive()
    for c in range(max_cost + 1):
        archive.insert(ind(float(c), float(c)))
    return archive


class TestSlidingSelection:
    def test_integral_schedule_pins_single_cost(self):
        archive = ladder_archive()
        rng = make_rng(0)
        for _ in range(50):
            chosen = sliding_selection(archive, 50, 100, 10.0, rng)
            assert chosen.objectives.cost == 5.0

    def test_fractional_schedule_splits_between_neighbors(self):
        archive = ladder_archive()
        rng = make_rng(1)
        picks = [sliding_selection(archive, 55, 100, 10.0, rng).objectives.cost
                 for _ in range(4000)]
        assert set(picks) == {5.0, 6.0}
        share = picks.count(5.0) / len(picks)
        assert abs(share - 0.5) < 0.05

    def test_empty_window_falls_back_to_whole_archive(self):
        archive = ParetoArchive()
        archive.insert(ind(0, 0))
        rng = make_rng(2)
        events = []
        chosen = sliding_selection(archive, 50, 100, 10.0, rng, observer=events.append)
        assert chosen.objectives.cost == 0.0
        assert events[0].fallback is True
        assert events[0].window_size == 1

    def test_beyond_schedule_uses_whole_archive(self):
        archive = ladder_archive()
        rng = make_rng(3)
        costs = {sliding_selection(archive, 101, 100, 10.0, rng).objectives.cost
                 for _ in range(500)}
        assert len(costs) > 2  # not confined to any window

    def test_observer_reports_window(self):
        archive = ladder_archive()
        rng = make_rng(4)
        events = []
        sliding_selection(archive, 55, 100, 10.0, rng, observer=events.append)
        ev = events[0]
        assert ev == SelectionEvent(55, True, 5.0, 6.0, 2, False, ev.chosen_cost)


class CountingProblem:
    """Wraps a problem and counts offspring evaluations."""

    def __init__(self, inner):
        self.inner = inner
        self.offspring_evaluations = 0

    @property
    def n(self):
        return self.inner.n

    @property
    def budget(self):
        return self.inner.budget

    def evaluate(self, x):
        return self.inner.evaluate(x)

    def evaluate_offspring(self, y, parent=None, flipped=None):
        self.offspring_evaluations += 1
        return self.inner.evaluate_offspring(y, parent, flipped)


class TestRuns:
    @pytest.mark.parametrize("runner", [gsemo_run, sw_gsemo_run])
    @pytest.mark.parametrize("seed", [0, 7, 123])
    def test_star_budget_one_finds_hub(self, runner, seed):
        # oracle: brute force over all single-node selections picks the hub (f=4)
        inst = star_instance(budget=1)
        result = runner(inst, AlgorithmConfig(t_max=2000, seed=seed))
        assert result.best.objectives.f == 4.0
        assert result.best.objectives.cost == 1.0

    @pytest.mark.parametrize("runner", [gsemo_run, sw_gsemo_run])
    def test_zero_iterations_leaves_origin_only(self, runner):
        inst = star_instance()
        result = runner(inst, AlgorithmConfig(t_max=0, seed=5))
        assert archive_vectors(result.final_archive) == {(0.0, 0.0)}
        assert result.best.objectives.f == 0.0
        assert result.evaluations == 1

    @pytest.mark.parametrize("runner", [gsemo_run, sw_gsemo_run])
    def test_every_offspring_evaluated_once(self, runner):
        counter = CountingProblem(star_instance(budget=2))
        result = runner(counter, AlgorithmConfig(t_max=500, seed=3))
        assert counter.offspring_evaluations == 500 + 1  # offspring plus the initial 0^n
        assert result.evaluations == 501

    def test_best_equals_archive_best_feasible(self):
        inst = star_instance(budget=2)
        result = sw_gsemo_run(inst, AlgorithmConfig(t_max=300, seed=9))
        assert result.best is result.final_archive.best_feasible()

    def test_trace_best_is_monotone(self):
        g = er_graph(30, 0.1, seed=12)
        inst = CoverageInstance.from_graph(g, np.ones(30), 5)
        result = sw_gsemo_run(inst, AlgorithmConfig(t_max=3000, seed=4, trace_period=1))
        best_fs = [pt.best_f for pt in result.trace]
        assert best_fs == sorted(best_fs)
        assert len(result.trace) == 3000

    def test_trace_cadence_includes_final_iteration(self):
        inst = star_instance()
        result = gsemo_run(inst, AlgorithmConfig(t_max=95, seed=1, trace_period=10))
        assert [pt.iteration for pt in result.trace] == [10, 20, 30, 40, 50, 60, 70, 80, 90, 95]

    def test_trace_off_by_default(self):
        result = gsemo_run(star_instance(), AlgorithmConfig(t_max=50, seed=1))
        assert result.trace == ()

    def test_same_seed_reproduces_run(self):
        g = er_graph(25, 0.15, seed=3)
        inst = CoverageInstance.from_graph(g, np.ones(25), 4)
        a = sw_gsemo_run(inst, AlgorithmConfig(t_max=1500, seed=11))
        b = sw_gsemo_run(inst, AlgorithmConfig(t_max=1500, seed=11))
        assert archive_vectors(a.final_archive) == archive_vectors(b.final_archive)
        assert a.best.objectives == b.best.objectives

    def test_sw_with_window_disabled_equals_gsemo(self, monkeypatch):
        # the two loops must differ in selection only: forcing the sliding
        # window to the whole archive reproduces gsemo draw for draw
        def whole_population(archive, t, t_max, budget, rng, observer=None):
            return archive.random_member(rng)

        monkeypatch.setattr(swgsemo.algorithms, "sliding_selection", whole_population)
        g = er_graph(20, 0.2, seed=7)
        inst = CoverageInstance.from_graph(g, np.ones(20), 4)
        config = AlgorithmConfig(t_max=2000, seed=21, trace_period=100)
        sw = sw_gsemo_run(inst, config)
        plain = gsemo_run(inst, config)
        assert archive_vectors(sw.final_archive) == archive_vectors(plain.final_archive)
        assert sw.best.objectives == plain.best.objectives
        assert sw.trace == plain.trace

    def test_window_invariants_on_integer_costs(self):
        g = er_graph(50, 0.06, seed=9)
        inst = CoverageInstance.from_graph(g, np.ones(50), 10)
        events = []
        sw_gsemo_run(inst, AlgorithmConfig(t_max=3000, seed=2), selection_observer=events.append)
        assert len(events) == 3000
        for ev in events:
            if ev.scheduled and not ev.fallback:
                assert ev.window_size <= 2
                assert ev.window_lo <= ev.chosen_cost <= ev.window_hi

    def test_gsemo_reaches_brute_force_optimum_on_small_instances(self):
        # oracle: exhaustive enumeration of C(12, <=3) selections per graph
        hits = 0
        for k in range(30):
            g = er_graph(12, 0.3, seed=100 + k)
            inst = CoverageInstance.from_graph(g, np.ones(12), 3)
            opt, _ = brute_force_optimum(inst, max_cardinality=3)
            result = gsemo_run(inst, AlgorithmConfig(t_max=50_000, seed=1000 + k))
            hits += result.best.objectives.f == opt
        assert hits >= 29

    def test_sw_gsemo_theorem_budget_reaches_approximation(self):
        # oracle as above; iteration budget from the uniform-constraint bound
        t_max = recommended_tmax_uniform(12, 3)
        assert t_max == 973
        good = 0
        for k in range(30):
            g = er_graph(12, 0.3, seed=100 + k)
            inst = CoverageInstance.from_graph(g, np.ones(12), 3)
            opt, _ = brute_force_optimum(inst, max_cardinality=3)
            result = sw_gsemo_run(inst, AlgorithmConfig(t_max=t_max, seed=1000 + k))
            good += result.best.objectives.f >= (1 - 1 / math.e) * opt
        assert good >= 29

    def test_infeasible_offspring_never_enter_archive(self):
        inst = star_instance(budget=1)
        result = gsemo_run(inst, AlgorithmConfig(t_max=2000, seed=6))
        for member in result.final_archive:
            assert member.objectives.feasible
            assert member.objectives.cost <= 1.0

    def test_archive_members_carry_fresh_evaluations(self):
        # cached objective vectors and covered-node bitsets must equal a
        # from-scratch evaluation of the stored genotype
        g = er_graph(80, 0.04, seed=18)
        costs = np.random.default_rng(6).uniform(0.5, 1.5, 80)
        inst = CoverageInstance.from_graph(g, costs, 9.0)
        result = sw_gsemo_run(inst, AlgorithmConfig(t_max=5000, seed=13))
        for member in result.final_archive:
            assert member.objectives == inst.evaluate(member.genotype)
            assert member.cache == inst.union_mask(member.genotype)


class TestConfig:
    def test_rejects_negative_t_max(self):
        with pytest.raises(ValueError):
            AlgorithmConfig(t_max=-1)

    def test_rejects_unknown_mutation(self):
        with pytest.raises(ValueError):
            AlgorithmConfig(t_max=10, mutation="heavy-tailed")

    def test_rejects_negative_trace_period(self):
        with pytest.raises(ValueError):
            AlgorithmConfig(t_max=10, trace_period=-5)
