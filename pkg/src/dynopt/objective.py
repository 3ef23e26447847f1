"""Uniform objective interface the optimizers run against.

A dynamic objective owns its own evaluation counter and may change its
landscape as a side effect of being evaluated; optimizers only ever see
``evaluate``, the bounds, the sense, and a change counter they can poll.
"""

from __future__ import annotations

import abc
from typing import Callable

import numpy as np

from dynopt.errors import DimensionMismatch


class DynamicObjective(abc.ABC):
    """Minimal contract between a (possibly changing) problem and a solver."""

    @abc.abstractmethod
    def dimension(self) -> int:
        """Current number of decision variables."""

    @abc.abstractmethod
    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        """Per-dimension (lower, upper) arrays for the current dimension."""

    @abc.abstractmethod
    def evaluate(self, x: np.ndarray) -> float:
        """Objective value at ``x``; counts one evaluation."""

    @abc.abstractmethod
    def optimum_value(self) -> float:
        """Objective value of the current global optimum."""

    @abc.abstractmethod
    def change_count(self) -> int:
        """Number of environment changes so far (0 while static)."""

    @property
    def maximize(self) -> bool:
        return False

    def check_dimension(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.dimension():
            raise DimensionMismatch(
                f"expected a vector of length {self.dimension()}, got shape {x.shape}"
            )
        return x


class StaticFunctionProblem(DynamicObjective):
    """Wrap a plain function as a never-changing objective (mostly for tests)."""

    def __init__(
        self,
        func: Callable[[np.ndarray], float],
        dimension: int,
        lower: float,
        upper: float,
        optimum: float = 0.0,
        maximize: bool = False,
    ) -> None:
        if upper <= lower:
            raise ValueError("upper bound must exceed lower bound")
        self._func = func
        self._dim = int(dimension)
        self._lower = np.full(self._dim, float(lower))
        self._upper = np.full(self._dim, float(upper))
        self._optimum = float(optimum)
        self._maximize = bool(maximize)
        self.evaluations = 0

    def dimension(self) -> int:
        return self._dim

    def bounds(self) -> tuple[np.ndarray, np.ndarray]:
        return self._lower, self._upper

    def evaluate(self, x: np.ndarray) -> float:
        x = self.check_dimension(x)
        self.evaluations += 1
        return float(self._func(x))

    def optimum_value(self) -> float:
        return self._optimum

    def change_count(self) -> int:
        return 0

    @property
    def maximize(self) -> bool:
        return self._maximize
