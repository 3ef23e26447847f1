"""Reference optimizers: a classic salp chain and a gbest PSO.

Both share the sentinel-based change handling of the main optimizer so
comparisons measure search behaviour, not bookkeeping.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dynopt.objective import DynamicObjective
from dynopt.optimizers.base import CHANGE_TOLERANCE, SwarmBase


@dataclass(frozen=True)
class SsaConfig:
    population: int = 50


@dataclass(frozen=True)
class PsoConfig:
    population: int = 50
    chi: float = 0.7298
    c1: float = 1.49618
    c2: float = 1.49618


class SsaBaseline(SwarmBase):
    """Single-chain salp swarm: one leader orbits the food, the rest average.

    Memory is just the food position; on a detected change it is re-scored
    and the leader's shrinking orbit restarts.
    """

    def __init__(
        self,
        problem: DynamicObjective,
        seed: int,
        budget: int,
        frequency: int | None = None,
        config: SsaConfig | None = None,
    ) -> None:
        self.config = config or SsaConfig()
        super().__init__(
            problem,
            seed,
            self.config.population,
            budget,
            frequency,
            evals_per_iteration=self.config.population + 1,
        )
        self.evaluate_all()
        best = self.argbest(self.fitness)
        self.food_position = self.positions[best].copy()
        self.food_fitness = float(self.fitness[best])

    def _resize_extra_state(self, new_dim: int) -> None:
        self.food_position = self._resize_vector(self.food_position, new_dim)

    def detect_change(self) -> bool:
        sentinel = self.eval_at(self.food_position)
        changed = self._dim_changed or abs(sentinel - self.food_fitness) > CHANGE_TOLERANCE
        self._dim_changed = False
        if changed:
            self.food_fitness = float(sentinel)
            self.l_window = 0
        return changed

    def iterate(self) -> None:
        self.sync_dimension()
        self.detect_change()
        l_eff = min(self.l_window, self.max_iterations)
        c1 = 2.0 * math.exp(-((4.0 * l_eff / self.max_iterations) ** 2))
        span = self.upper - self.lower
        c2 = self.rng.random(self.dim)
        side = self.rng.random(self.dim) >= 0.5
        step = c1 * (span * c2 + self.lower)
        self.positions[0] = np.where(
            side, self.food_position + step, self.food_position - step
        )
        for i in range(1, self.n):
            self.positions[i] = (self.positions[i] + self.positions[i - 1]) / 2.0
        self.clamp_positions()
        self.evaluate_all()
        for i in range(self.n):
            if self.better(float(self.fitness[i]), self.food_fitness):
                self.food_fitness = float(self.fitness[i])
                self.food_position = self.positions[i].copy()
        self.l_window += 1
        self.iterations += 1


class PsoBaseline(SwarmBase):
    """Global-best PSO with an inertia-style constriction and pbest memory."""

    def __init__(
        self,
        problem: DynamicObjective,
        seed: int,
        budget: int,
        frequency: int | None = None,
        config: PsoConfig | None = None,
    ) -> None:
        self.config = config or PsoConfig()
        super().__init__(
            problem,
            seed,
            self.config.population,
            budget,
            frequency,
            evals_per_iteration=self.config.population + 1,
        )
        self.velocities = np.zeros((self.n, self.dim))
        self.evaluate_all()
        self.pbest_positions = self.positions.copy()
        self.pbest_fitness = self.fitness.copy()
        best = self.argbest(self.pbest_fitness)
        self.gbest_position = self.pbest_positions[best].copy()
        self.gbest_fitness = float(self.pbest_fitness[best])

    def _resize_extra_state(self, new_dim: int) -> None:
        old = self.velocities.shape[1]
        if new_dim > old:
            pad = np.zeros((self.n, new_dim - old))
            self.velocities = np.hstack([self.velocities, pad])
        else:
            self.velocities = self.velocities[:, :new_dim].copy()
        self.pbest_positions = self._resize_matrix(self.pbest_positions, new_dim)
        self.gbest_position = self._resize_vector(self.gbest_position, new_dim)

    def detect_change(self) -> bool:
        sentinel = self.eval_at(self.gbest_position)
        changed = self._dim_changed or abs(sentinel - self.gbest_fitness) > CHANGE_TOLERANCE
        self._dim_changed = False
        if changed:
            self.gbest_fitness = float(sentinel)
            for i in range(self.n):
                self.pbest_fitness[i] = self.eval_at(self.pbest_positions[i])
            best = self.argbest(self.pbest_fitness)
            if self.better(float(self.pbest_fitness[best]), self.gbest_fitness):
                self.gbest_position = self.pbest_positions[best].copy()
                self.gbest_fitness = float(self.pbest_fitness[best])
        return changed

    def iterate(self) -> None:
        self.sync_dimension()
        self.detect_change()
        cfg = self.config
        span = self.upper - self.lower
        r1 = self.rng.random((self.n, self.dim))
        r2 = self.rng.random((self.n, self.dim))
        self.velocities = (
            cfg.chi * self.velocities
            + cfg.c1 * r1 * (self.pbest_positions - self.positions)
            + cfg.c2 * r2 * (self.gbest_position - self.positions)
        )
        np.clip(self.velocities, -span, span, out=self.velocities)
        self.positions = self.positions + self.velocities
        self.clamp_positions()
        self.evaluate_all()
        for i in range(self.n):
            if self.better(float(self.fitness[i]), float(self.pbest_fitness[i])):
                self.pbest_fitness[i] = self.fitness[i]
                self.pbest_positions[i] = self.positions[i]
        best = self.argbest(self.pbest_fitness)
        if self.better(float(self.pbest_fitness[best]), self.gbest_fitness):
            self.gbest_position = self.pbest_positions[best].copy()
            self.gbest_fitness = float(self.pbest_fitness[best])
        self.l_window += 1
        self.iterations += 1
