"""Shared plumbing for the swarm optimizers.

Each optimizer runs against a :class:`~dynopt.objective.DynamicObjective`
(usually wrapped in a budget recorder), owns one RNG, and survives both
landscape changes and dimension changes mid-run.
"""

from __future__ import annotations

import math

import numpy as np

from dynopt.errors import ConfigError
from dynopt.objective import DynamicObjective

CHANGE_TOLERANCE = 1e-12


class SwarmBase:
    """Population state and the change-handling skeleton."""

    def __init__(
        self,
        problem: DynamicObjective,
        seed: int,
        population: int,
        budget: int,
        frequency: int | None,
        evals_per_iteration: int,
    ) -> None:
        if population < 1:
            raise ConfigError("population must be at least 1")
        self.problem = problem
        self.rng = np.random.default_rng(int(seed))
        self.n = int(population)
        self.maximize = problem.maximize
        self.dim = problem.dimension()
        lower, upper = problem.bounds()
        self.lower = np.asarray(lower, dtype=float).copy()
        self.upper = np.asarray(upper, dtype=float).copy()
        self._window_budget = int(frequency) if frequency else int(budget)
        self._epi = int(evals_per_iteration)
        self.max_iterations = max(1, self._window_budget // self._epi)
        self.l_window = 0
        self.iterations = 0
        self.evaluations = 0
        self._dim_changed = False

        self.positions = self.rng.uniform(
            self.lower, self.upper, size=(self.n, self.dim)
        )
        self.fitness = np.empty(self.n)
        self.worst_value = -math.inf if self.maximize else math.inf

    # -- sense helpers ----------------------------------------------------

    def better(self, a: float, b: float) -> bool:
        return a > b if self.maximize else a < b

    def argbest(self, values: np.ndarray) -> int:
        return int(np.argmax(values) if self.maximize else np.argmin(values))

    # -- evaluation -------------------------------------------------------

    def eval_at(self, x: np.ndarray) -> float:
        self.evaluations += 1
        return self.problem.evaluate(x)

    def evaluate_all(self) -> None:
        for i in range(self.n):
            self.fitness[i] = self.eval_at(self.positions[i])

    def clamp_positions(self) -> None:
        np.clip(self.positions, self.lower, self.upper, out=self.positions)

    # -- dimension adaptation ----------------------------------------------

    def sync_dimension(self) -> None:
        """Resize all position state when the problem's dimension moved."""
        new_dim = self.problem.dimension()
        if new_dim == self.dim:
            return
        lower, upper = self.problem.bounds()
        self.lower = np.asarray(lower, dtype=float).copy()
        self.upper = np.asarray(upper, dtype=float).copy()
        self.positions = self._resize_matrix(self.positions, new_dim)
        self._resize_extra_state(new_dim)
        self.dim = new_dim
        self._dim_changed = True

    def _resize_matrix(self, mat: np.ndarray, new_dim: int) -> np.ndarray:
        old = mat.shape[1]
        if new_dim > old:
            extra = self.rng.uniform(
                self.lower[old:new_dim],
                self.upper[old:new_dim],
                size=(mat.shape[0], new_dim - old),
            )
            return np.hstack([mat, extra])
        return mat[:, :new_dim].copy()

    def _resize_vector(self, vec: np.ndarray, new_dim: int) -> np.ndarray:
        old = vec.shape[0]
        if new_dim > old:
            extra = self.rng.uniform(self.lower[old:new_dim], self.upper[old:new_dim])
            return np.concatenate([vec, np.atleast_1d(extra)])
        return vec[:new_dim].copy()

    def _resize_extra_state(self, new_dim: int) -> None:
        """Subclasses resize their memory (pbests, velocities, food)."""

    # -- run loop -----------------------------------------------------------

    def iterate(self) -> None:  # pragma: no cover - abstract
        raise NotImplementedError

    def run_forever(self) -> None:
        """Iterate until the budget guard raises."""
        while True:
            self.iterate()
