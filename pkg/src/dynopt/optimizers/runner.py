"""Budget enforcement, per-window recording, and the single-run entry point.

A run wraps the objective in a recorder that raises once the evaluation
budget is spent and that snapshots the best error each time the landscape
shifts under the optimizer. The resulting trajectory carries everything the
scoring layer needs: the error at each window close and a fixed number of
in-window convergence samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from dynopt.errors import BudgetExhausted, ConfigError
from dynopt.objective import DynamicObjective
from dynopt.overrides import apply_overrides
from dynopt.optimizers.baselines import PsoBaseline, PsoConfig, SsaBaseline, SsaConfig
from dynopt.optimizers.qcsso import Qcsso, QcssoConfig

OPTIMIZER_IDS = ("qcsso", "ssa_baseline", "pso_baseline")

RATIO_DUST = 1e-9


def _ratio(best: float, optimum: float, maximize: bool) -> float:
    """Quality ratio in (0, 1], where 1 means the optimum was matched."""
    r = best / optimum if maximize else optimum / best
    if r > 1.0:
        if r > 1.0 + RATIO_DUST:
            raise RuntimeError(
                f"quality ratio {r!r} exceeds 1: best={best!r} optimum={optimum!r}"
            )
        r = 1.0
    return r


class BudgetedRecorder(DynamicObjective):
    """Objective wrapper that meters evaluations and records window results.

    Window boundaries are observed through the wrapped problem's change
    counter. The evaluation that triggers a change is scored against the new
    landscape, so the previous window's record is frozen just before it.
    """

    def __init__(
        self,
        problem: DynamicObjective,
        budget: int,
        frequency: int | None = None,
        s_samples: int = 20,
        collect_ratios: bool = False,
        trace: bool = False,
    ) -> None:
        if budget < 0:
            raise ConfigError("budget must be non-negative")
        if collect_ratios and not frequency:
            raise ConfigError("ratio sampling requires a change frequency")
        if s_samples < 1:
            raise ConfigError("s_samples must be at least 1")
        self.problem = problem
        self.budget = int(budget)
        self.frequency = int(frequency) if frequency else 0
        self.s_samples = int(s_samples)
        self.collect_ratios = bool(collect_ratios)
        self.trace_enabled = bool(trace)

        self.used = 0
        self.e_last: list[float] = []
        self.r_last: list[float] = []
        self.ratio_samples: list[list[float]] = []
        self.trace: list[tuple[int, float]] = []

        self._seen_changes = problem.change_count()
        self._window_best: float | None = None
        self._window_err = float("inf")
        self._window_ratio = 0.0
        self._window_evals = 0
        self._window_samples: list[float] = []
        self._offsets = self._sample_offsets(first=True)

        self.best_value: float | None = None
        self.final_error = float("inf")

    # -- DynamicObjective surface ------------------------------------

    def dimension(self) -> int:
        return self.problem.dimension()

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self.problem.bounds()

    def optimum_value(self) -> float:
        return self.problem.optimum_value()

    def change_count(self) -> int:
        return self.problem.change_count()

    @property
    def maximize(self) -> bool:
        return self.problem.maximize

    # -- recording ----------------------------------------------------

    def _sample_offsets(self, first: bool) -> list[int]:
        if not (self.collect_ratios and self.frequency):
            return []
        width = self.frequency - 1 if first else self.frequency
        return [(s * width) // self.s_samples for s in range(1, self.s_samples + 1)]

    def _close_window(self) -> None:
        self.e_last.append(self._window_err)
        if self.collect_ratios:
            samples = self._window_samples[: self.s_samples]
            while len(samples) < self.s_samples:
                samples.append(self._window_ratio)
            self.r_last.append(self._window_ratio)
            self.ratio_samples.append(samples)
        self._window_best = None
        self._window_err = float("inf")
        self._window_ratio = 0.0
        self._window_evals = 0
        self._window_samples = []
        self._offsets = self._sample_offsets(first=False)

    def evaluate(self, x: np.ndarray) -> float:
        if self.used >= self.budget:
            raise BudgetExhausted(f"evaluation budget of {self.budget} spent")
        value = self.problem.evaluate(x)
        self.used += 1

        seen = self.problem.change_count()
        if seen != self._seen_changes:
            self._seen_changes = seen
            self._close_window()

        better = self._window_best is None or (
            value > self._window_best if self.maximize else value < self._window_best
        )
        if better:
            self._window_best = value
            optimum = self.problem.optimum_value()
            self._window_err = abs(value - optimum)
            if self.collect_ratios:
                self._window_ratio = _ratio(value, optimum, self.maximize)
            globally_better = self.best_value is None or (
                value > self.best_value if self.maximize else value < self.best_value
            )
            if globally_better:
                self.best_value = value
        self._window_evals += 1
        if self.collect_ratios:
            while self._offsets and self._offsets[0] <= self._window_evals:
                self._offsets.pop(0)
                self._window_samples.append(self._window_ratio)
        if self.trace_enabled:
            self.trace.append((self.used, self._window_err))
        return value

    def final_snapshot(self) -> None:
        """Record the error of the best value found in the last open window."""
        if self._window_best is not None:
            self.final_error = self._window_err


@dataclass
class Trajectory:
    """Everything one optimizer run produced, ready for scoring or export."""

    optimizer_id: str
    seed: int
    evaluations: int
    e_last: list[float] = field(default_factory=list)
    r_last: list[float] = field(default_factory=list)
    ratio_samples: list[list[float]] = field(default_factory=list)
    best_value: float | None = None
    final_error: float = float("inf")
    trace: list[tuple[int, float]] = field(default_factory=list)

    def serialize(self) -> str:
        lines = ["eval_count,error"]
        for count, err in self.trace:
            lines.append(f"{count},{err!r}")
        lines.append("change_index,E_last")
        for index, err in enumerate(self.e_last):
            lines.append(f"{index},{err!r}")
        return "\n".join(lines) + "\n"


def _build_optimizer(
    optimizer_id: str,
    problem: DynamicObjective,
    seed: int,
    budget: int,
    frequency: int | None,
    overrides: dict[str, str] | None,
):
    if optimizer_id == "qcsso":
        config = apply_overrides(QcssoConfig(), overrides or {})
        return Qcsso(problem, seed, budget, frequency, config)
    if optimizer_id == "ssa_baseline":
        config = apply_overrides(SsaConfig(), overrides or {})
        return SsaBaseline(problem, seed, budget, frequency, config)
    if optimizer_id == "pso_baseline":
        config = apply_overrides(PsoConfig(), overrides or {})
        return PsoBaseline(problem, seed, budget, frequency, config)
    raise ConfigError(
        f"unknown optimizer {optimizer_id!r}; expected one of {', '.join(OPTIMIZER_IDS)}"
    )


def run(
    optimizer_id: str,
    problem: DynamicObjective,
    budget: int,
    seed: int,
    *,
    s_samples: int = 20,
    frequency: int | None = None,
    collect_ratios: bool = False,
    trace: bool = False,
    overrides: dict[str, str] | None = None,
) -> Trajectory:
    """Run one optimizer against one problem until the budget is spent."""
    recorder = BudgetedRecorder(
        problem,
        budget,
        frequency=frequency,
        s_samples=s_samples,
        collect_ratios=collect_ratios,
        trace=trace,
    )
    if budget > 0:
        try:
            optimizer = _build_optimizer(
                optimizer_id, recorder, seed, budget, frequency, overrides
            )
            optimizer.run_forever()
        except BudgetExhausted:
            pass
    recorder.final_snapshot()
    return Trajectory(
        optimizer_id=optimizer_id,
        seed=seed,
        evaluations=recorder.used,
        e_last=recorder.e_last,
        r_last=recorder.r_last,
        ratio_samples=recorder.ratio_samples,
        best_value=recorder.best_value,
        final_error=recorder.final_error,
        trace=recorder.trace,
    )
