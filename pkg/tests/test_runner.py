"""Budget metering, window records, and the single-run entry point."""

import numpy as np
import pytest

from dynopt.errors import BudgetExhausted, ConfigError
from dynopt.gdbg.instance import make_instance
from dynopt.objective import DynamicObjective
from dynopt.optimizers.runner import (
    OPTIMIZER_IDS,
    BudgetedRecorder,
    Trajectory,
    _ratio,
    run,
)

from conftest import sphere_problem

SMALL_QCSSO = {"population": "6", "subpopulations": "2"}
SMALL_POP = {"population": "6"}


class ScriptedProblem(DynamicObjective):
    """Returns preset values; chosen evaluations land after a change.

    ``change_at`` holds 1-based evaluation counts whose value is already
    scored against the next environment, matching how the benchmark
    advances mid-evaluation on a window boundary.
    """

    def __init__(self, values, change_at=(), optima=(0.0,), maximize=False,
                 dim=2):
        self._values = list(values)
        self._change_at = set(change_at)
        self._optima = list(optima)
        self._maximize = maximize
        self._dim = dim
        self.count = 0
        self.t = 0

    @property
    def maximize(self):
        return self._maximize

    def dimension(self):
        return self._dim

    def bounds(self):
        return np.full(self._dim, -5.0), np.full(self._dim, 5.0)

    def evaluate(self, x):
        self.count += 1
        if self.count in self._change_at:
            self.t += 1
        return self._values[self.count - 1]

    def optimum_value(self):
        return self._optima[min(self.t, len(self._optima) - 1)]

    def change_count(self):
        return self.t


def feed(recorder, n):
    x = np.zeros(recorder.dimension())
    for _ in range(n):
        recorder.evaluate(x)


class TestRatio:
    def test_plain_ratios(self):
        assert _ratio(50.0, 100.0, True) == 0.5
        assert _ratio(50.0, 25.0, False) == 0.5
        assert _ratio(100.0, 100.0, True) == 1.0

    def test_dust_above_one_clamps(self):
        assert _ratio(100.0 * (1.0 + 0.5e-9), 100.0, True) == 1.0
        assert _ratio(100.0 / (1.0 + 0.5e-9), 100.0, False) == 1.0

    def test_more_than_dust_raises(self):
        with pytest.raises(RuntimeError, match="exceeds 1"):
            _ratio(100.0 * (1.0 + 5e-9), 100.0, True)
        with pytest.raises(RuntimeError):
            _ratio(100.0 / (1.0 + 5e-9), 100.0, False)


class TestRecorder:
    def test_budget_guard_raises_before_forwarding(self):
        problem = ScriptedProblem([1.0] * 10)
        rec = BudgetedRecorder(problem, budget=3)
        feed(rec, 3)
        with pytest.raises(BudgetExhausted):
            rec.evaluate(np.zeros(2))
        assert problem.count == 3
        assert rec.used == 3

    def test_e_last_frozen_before_the_crossing_evaluation(self):
        problem = ScriptedProblem(
            [5.0, 3.0, 7.0], change_at={3}, optima=[0.0, 1.0]
        )
        rec = BudgetedRecorder(problem, budget=3)
        feed(rec, 3)
        rec.final_snapshot()
        assert rec.e_last == [3.0]
        assert rec.final_error == 6.0  # |7 - new optimum 1|
        assert rec.best_value == 3.0

    def test_window_best_resets_after_a_change(self):
        problem = ScriptedProblem(
            [2.0, 9.0, 8.0], change_at={2}, optima=[0.0, 0.0]
        )
        rec = BudgetedRecorder(problem, budget=3)
        feed(rec, 3)
        rec.final_snapshot()
        assert rec.e_last == [2.0]
        # the new window starts from the crossing value, not the old best
        assert rec.final_error == 8.0

    def test_ratio_sampling_offsets(self):
        problem = ScriptedProblem(
            [50.0, 80.0, 90.0, 100.0], change_at={4},
            optima=[100.0, 200.0], maximize=True,
        )
        rec = BudgetedRecorder(
            problem, budget=4, frequency=4, s_samples=2, collect_ratios=True
        )
        feed(rec, 4)
        rec.final_snapshot()
        # first window spans 3 evaluations, samples land at offsets 1 and 3
        assert rec.r_last == [0.9]
        assert rec.ratio_samples == [[0.5, 0.9]]
        assert rec.e_last == [10.0]
        assert rec.final_error == 100.0

    def test_short_window_pads_with_closing_ratio(self):
        problem = ScriptedProblem(
            [50.0, 80.0], change_at={2}, optima=[100.0, 100.0], maximize=True
        )
        rec = BudgetedRecorder(
            problem, budget=2, frequency=10, s_samples=3, collect_ratios=True
        )
        feed(rec, 2)
        assert rec.r_last == [0.5]
        assert rec.ratio_samples == [[0.5, 0.5, 0.5]]

    def test_no_window_closed_without_changes(self):
        problem = ScriptedProblem([4.0, 2.0, 3.0])
        rec = BudgetedRecorder(problem, budget=3)
        feed(rec, 3)
        rec.final_snapshot()
        assert rec.e_last == []
        assert rec.final_error == 2.0

    def test_final_snapshot_without_any_evaluation(self):
        rec = BudgetedRecorder(ScriptedProblem([1.0]), budget=1)
        rec.final_snapshot()
        assert rec.final_error == float("inf")
        assert rec.best_value is None

    def test_trace_records_every_evaluation(self):
        problem = ScriptedProblem([5.0, 3.0, 4.0])
        rec = BudgetedRecorder(problem, budget=3, trace=True)
        feed(rec, 3)
        assert rec.trace == [(1, 5.0), (2, 3.0), (3, 3.0)]

    def test_validation(self):
        problem = ScriptedProblem([1.0])
        with pytest.raises(ConfigError):
            BudgetedRecorder(problem, budget=-1)
        with pytest.raises(ConfigError):
            BudgetedRecorder(problem, budget=5, collect_ratios=True)
        with pytest.raises(ConfigError):
            BudgetedRecorder(problem, budget=5, s_samples=0)

    def test_forwards_problem_surface(self):
        problem = ScriptedProblem([1.0], maximize=True, dim=3)
        rec = BudgetedRecorder(problem, budget=1)
        assert rec.dimension() == 3
        assert rec.maximize is True
        assert rec.optimum_value() == 0.0
        lower, upper = rec.bounds()
        assert lower.shape == (3,)
        assert np.all(upper == 5.0)


class TestRun:
    @pytest.mark.parametrize("optimizer_id", OPTIMIZER_IDS)
    def test_budget_spent_exactly(self, optimizer_id):
        overrides = SMALL_QCSSO if optimizer_id == "qcsso" else SMALL_POP
        traj = run(
            optimizer_id, sphere_problem(), budget=137, seed=3,
            overrides=overrides,
        )
        assert traj.evaluations == 137
        assert traj.optimizer_id == optimizer_id
        assert traj.final_error < float("inf")

    def test_zero_budget_runs_nothing(self):
        traj = run("qcsso", sphere_problem(), budget=0, seed=3)
        assert traj.evaluations == 0
        assert traj.e_last == []
        assert traj.best_value is None
        assert traj.final_error == float("inf")

    def test_unknown_optimizer(self):
        with pytest.raises(ConfigError, match="unknown optimizer"):
            run("cmaes", sphere_problem(), budget=10, seed=3)

    def test_every_window_closes_on_a_real_instance(self):
        problem = make_instance(
            "F1(10)", "T1", seed=17,
            overrides={"dimension": "5", "change_frequency": "50"},
        )
        traj = run(
            "qcsso", problem, budget=250, seed=4,
            frequency=50, collect_ratios=True, s_samples=4,
            overrides=SMALL_QCSSO,
        )
        assert traj.evaluations == 250
        assert len(traj.e_last) == 5
        assert len(traj.r_last) == 5
        assert all(len(row) == 4 for row in traj.ratio_samples)
        assert all(0.0 < r <= 1.0 for r in traj.r_last)
        assert all(e >= 0.0 for e in traj.e_last)

    def test_identical_seeds_reproduce(self):
        results = []
        for _ in range(2):
            problem = make_instance(
                "F2", "T3", seed=23,
                overrides={"dimension": "5", "change_frequency": "60"},
            )
            traj = run(
                "ssa_baseline", problem, budget=300, seed=6,
                frequency=60, collect_ratios=True, overrides=SMALL_POP,
            )
            results.append(traj)
        assert results[0].e_last == results[1].e_last
        assert results[0].ratio_samples == results[1].ratio_samples
        assert results[0].best_value == results[1].best_value

    def test_trace_spans_the_run(self):
        traj = run(
            "pso_baseline", sphere_problem(), budget=40, seed=9,
            trace=True, overrides=SMALL_POP,
        )
        assert len(traj.trace) == 40
        assert traj.trace[0][0] == 1
        assert traj.trace[-1][0] == 40

    def test_overrides_reach_the_optimizer_config(self):
        with pytest.raises(ConfigError):
            run(
                "qcsso", sphere_problem(), budget=30, seed=3,
                overrides={"population": "7", "subpopulations": "2"},
            )


class TestTrajectory:
    def test_serialize_layout(self):
        traj = Trajectory(
            optimizer_id="qcsso", seed=1, evaluations=2,
            e_last=[0.125], trace=[(1, 0.5), (2, 0.25)],
        )
        assert traj.serialize() == (
            "eval_count,error\n"
            "1,0.5\n"
            "2,0.25\n"
            "change_index,E_last\n"
            "0,0.125\n"
        )

    def test_serialize_uses_full_precision(self):
        traj = Trajectory(
            optimizer_id="qcsso", seed=1, evaluations=1,
            e_last=[0.1 + 0.2], trace=[],
        )
        assert "0,0.30000000000000004" in traj.serialize()
