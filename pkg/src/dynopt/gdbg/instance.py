"""Benchmark instances: a landscape plus the machinery that changes it.

An instance owns its RNG, its change counter ``t``, and an evaluation
counter.  Evaluations drive time: when the counter crosses a multiple of
the change frequency the environment advances first and the crossing call
already sees the new landscape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from dynopt.errors import ConfigError
from dynopt.gdbg.changes import (
    ChangeType,
    DimensionWalk,
    DynamicParam,
    change_param,
)
from dynopt.gdbg.composition import CompositionProblem
from dynopt.gdbg.peaks import PeakSet
from dynopt.gdbg.rotation import paired_rotation, random_orthogonal
from dynopt.objective import DynamicObjective
from dynopt.overrides import apply_overrides

FUNCTION_IDS = ("F1(10)", "F1(50)", "F2", "F3", "F4", "F5", "F6")

_COMPOSITION_BASES = {
    "F2": ["sphere"] * 10,
    "F3": ["rastrigin"] * 10,
    "F4": ["griewank"] * 10,
    "F5": ["ackley"] * 10,
    "F6": ["sphere", "sphere", "rastrigin", "rastrigin", "weierstrass",
           "weierstrass", "griewank", "griewank", "ackley", "ackley"],
}


@dataclass(frozen=True)
class GdbgConfig:
    """Construction constants; every field can be overridden by key=value."""

    dimension: int = 10
    search_lower: float = -5.0
    search_upper: float = 5.0
    num_peaks: int = 10
    num_components: int = 10
    height_min: float = 10.0
    height_max: float = 100.0
    height_init: float = 50.0
    height_severity: float = 5.0
    width_min: float = 1.0
    width_max: float = 10.0
    width_init: float = 5.0
    width_severity: float = 0.5
    rotation_severity: float = 1.0
    sigma: float = 1.0
    normalizer: float = 2000.0
    change_frequency: int = 0  # 0 means the 10_000 * dimension default
    identity_rotation: bool = False

    def resolved_frequency(self) -> int:
        if self.change_frequency > 0:
            return int(self.change_frequency)
        return 10_000 * self.dimension


class GdbgInstance(DynamicObjective):
    """One seeded (function, change type) benchmark case."""

    def __init__(
        self,
        function_id: str,
        change_type: ChangeType,
        seed: int,
        config: GdbgConfig,
    ) -> None:
        if function_id not in FUNCTION_IDS:
            raise ConfigError(
                f"unknown function id {function_id!r}; expected one of {FUNCTION_IDS}"
            )
        if not 5 <= config.dimension <= 15:
            raise ConfigError("dimension must lie in [5, 15]")
        self.function_id = function_id
        self.change_type = change_type
        self.seed = int(seed)
        self.config = config
        self.rng = np.random.default_rng(self.seed)
        self.t = 0
        self.eval_count = 0
        self.frequency = config.resolved_frequency()
        self._walk = DimensionWalk(config.dimension)
        self.rotation_angle = DynamicParam(
            value=0.0,
            min=-math.pi,
            max=math.pi,
            severity=config.rotation_severity,
            phase=self.rng.uniform(0.0, 2.0 * math.pi),
        )
        if function_id.startswith("F1"):
            self.problem: PeakSet | CompositionProblem = self._build_peaks()
        else:
            self.problem = self._build_composition()

    # -- construction ---------------------------------------------------

    def _heights(self, count: int) -> list[DynamicParam]:
        cfg = self.config
        return [
            DynamicParam(
                value=cfg.height_init,
                min=cfg.height_min,
                max=cfg.height_max,
                severity=cfg.height_severity,
                phase=self.rng.uniform(0.0, 2.0 * math.pi),
            )
            for _ in range(count)
        ]

    def _build_peaks(self) -> PeakSet:
        cfg = self.config
        count = cfg.num_peaks
        centers = self.rng.uniform(
            cfg.search_lower, cfg.search_upper, size=(count, cfg.dimension)
        )
        heights = self._heights(count)
        widths = [
            DynamicParam(
                value=cfg.width_init,
                min=cfg.width_min,
                max=cfg.width_max,
                severity=cfg.width_severity,
                phase=self.rng.uniform(0.0, 2.0 * math.pi),
            )
            for _ in range(count)
        ]
        return PeakSet(centers, heights, widths, cfg.search_lower, cfg.search_upper)

    def _build_composition(self) -> CompositionProblem:
        cfg = self.config
        names = list(_COMPOSITION_BASES[self.function_id])
        if cfg.num_components != len(names):
            # trim or cycle the base list so unit tests may shrink instances
            names = [names[i % len(names)] for i in range(cfg.num_components)]
        optima = self.rng.uniform(
            cfg.search_lower, cfg.search_upper, size=(len(names), cfg.dimension)
        )
        if cfg.identity_rotation:
            matrices = np.stack([np.eye(cfg.dimension)] * len(names))
        else:
            matrices = np.stack(
                [random_orthogonal(cfg.dimension, self.rng) for _ in names]
            )
        return CompositionProblem(
            optima,
            self._heights(len(names)),
            names,
            matrices,
            cfg.search_lower,
            cfg.search_upper,
            sigma=cfg.sigma,
            normalizer=cfg.normalizer,
        )

    # -- DynamicObjective -----------------------------------------------

    def dimension(self) -> int:
        return self.problem.dim

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        d = self.problem.dim
        return (
            np.full(d, self.config.search_lower),
            np.full(d, self.config.search_upper),
        )

    @property
    def maximize(self) -> bool:
        return self.function_id.startswith("F1")

    def evaluate(self, x: np.ndarray) -> float:
        x = self.check_dimension(x)
        self.eval_count += 1
        if self.eval_count % self.frequency == 0:
            self.advance_environment()
            # the crossing call is already scored in the new environment;
            # its dimension may have moved under T7
            x = x[: self.problem.dim] if x.shape[0] >= self.problem.dim else x
            if x.shape[0] != self.problem.dim:
                x = np.concatenate([x, np.zeros(self.problem.dim - x.shape[0])])
        return self.problem.evaluate(x)

    def optimum_value(self) -> float:
        return self.problem.optimum_value()

    def optimum_position(self) -> np.ndarray:
        return self.problem.optimum_position()

    def change_count(self) -> int:
        return self.t

    # -- dynamics --------------------------------------------------------

    def advance_environment(self) -> None:
        """Move to the next environment: mutate parameters, rotate positions,
        and under T7 also step the dimension."""
        self.t += 1
        kind = self.change_type
        for p in self.problem.heights:
            change_param(p, kind, self.rng, self.t)
        if isinstance(self.problem, PeakSet):
            for p in self.problem.widths:
                change_param(p, kind, self.rng, self.t)
        change_param(self.rotation_angle, kind, self.rng, self.t)
        rotation = paired_rotation(
            self.problem.dim, self.rotation_angle.value, self.rng
        )
        if isinstance(self.problem, PeakSet):
            self.problem.rotate_centers(rotation)
        else:
            self.problem.rotate_optima(rotation)
        if kind is ChangeType.RANDOM_DIM:
            new_dim = self._walk.step()
            self.problem.resize(new_dim, self.rng)
            if self.config.identity_rotation and isinstance(
                self.problem, CompositionProblem
            ):
                self.problem.matrices = np.stack(
                    [np.eye(new_dim)] * self.problem.num_components
                )
                self.problem.refresh_normalization()
        self.problem.refresh_cache()

    # -- introspection ----------------------------------------------------

    def param_lines(self) -> list[str]:
        """Snapshot all dynamic parameters as ``t,name,value`` text lines.

        Values use shortest round-trip decimals so golden files compare
        exactly across runs.
        """
        lines = [
            f"{self.t},height[{i}],{p.value!r}"
            for i, p in enumerate(self.problem.heights)
        ]
        if isinstance(self.problem, PeakSet):
            lines += [
                f"{self.t},width[{i}],{p.value!r}"
                for i, p in enumerate(self.problem.widths)
            ]
        lines.append(f"{self.t},rotation_angle,{self.rotation_angle.value!r}")
        return lines


def make_instance(
    function_id: str,
    change_type: ChangeType | str,
    seed: int,
    overrides: dict | None = None,
) -> GdbgInstance:
    """Build a benchmark instance from a function id, regime, and seed."""
    if isinstance(change_type, str):
        change_type = ChangeType.from_label(change_type)
    config = apply_overrides(GdbgConfig(), overrides)
    if function_id == "F1(50)" and not (overrides and "num_peaks" in overrides):
        config = apply_overrides(config, {"num_peaks": 50})
    return GdbgInstance(function_id, change_type, seed, config)
