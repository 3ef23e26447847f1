"""Shared test helpers: a scripted RNG stand-in and controllable problems."""

from __future__ import annotations

import math

import numpy as np
import pytest

from dynopt.objective import DynamicObjective, StaticFunctionProblem


class FakeRng:
    """Drop-in replacement for numpy's Generator with scripted draws.

    Each supported method pops pre-recorded values from its own queue, in
    the order the code under test consumes them.  Running past the end of
    a queue fails the test immediately, so every scripted draw is
    accounted for.  Values are returned as-is: callers of ``uniform`` and
    ``standard_normal`` receive the queued numbers directly, not samples
    of a distribution.
    """

    def __init__(self, random=(), uniform=(), standard_normal=(), permutation=()):
        self._random = list(random)
        self._uniform = list(uniform)
        self._normal = list(standard_normal)
        self._perm = list(permutation)

    def _pop(self, queue, name):
        if not queue:
            raise AssertionError(f"FakeRng ran out of scripted {name} draws")
        return queue.pop(0)

    def _draw(self, queue, name, size):
        if size is None:
            return float(self._pop(queue, name))
        shape = (size,) if np.isscalar(size) else tuple(size)
        count = int(np.prod(shape))
        values = [float(self._pop(queue, name)) for _ in range(count)]
        return np.array(values).reshape(shape)

    def random(self, size=None):
        return self._draw(self._random, "random", size)

    def uniform(self, low=0.0, high=1.0, size=None):
        return self._draw(self._uniform, "uniform", size)

    def standard_normal(self, size=None):
        return self._draw(self._normal, "standard_normal", size)

    def normal(self, loc=0.0, scale=1.0, size=None):
        return loc + scale * self._draw(self._normal, "standard_normal", size)

    def permutation(self, n):
        values = self._pop(self._perm, "permutation")
        assert len(values) == n, "scripted permutation has the wrong length"
        return np.array(values, dtype=int)

    def exhausted(self) -> bool:
        return not (self._random or self._uniform or self._normal or self._perm)


class SwitchableProblem(DynamicObjective):
    """Quadratic bowl whose offset, center, and dimension tests can move.

    ``evaluate`` returns ``offset + sum((x - center)^2)``, so the optimum
    value is ``offset`` and sentinel re-evaluations notice any shift.
    """

    MAX_DIM = 24

    def __init__(self, dimension: int = 5, lower: float = -5.0, upper: float = 5.0):
        self._dim = int(dimension)
        self._lower = float(lower)
        self._upper = float(upper)
        self._center = np.zeros(self.MAX_DIM)
        self.offset = 0.0
        self.t = 0
        self.evaluations = 0

    def shift(self, offset=None, center_first=None, dimension=None) -> None:
        """Advance to a new environment, changing whatever was passed."""
        self.t += 1
        if offset is not None:
            self.offset = float(offset)
        if center_first is not None:
            self._center[0] = float(center_first)
        if dimension is not None:
            if not 1 <= dimension <= self.MAX_DIM:
                raise ValueError("dimension out of range for the test problem")
            self._dim = int(dimension)

    def dimension(self) -> int:
        return self._dim

    def bounds(self):
        return (
            np.full(self._dim, self._lower),
            np.full(self._dim, self._upper),
        )

    def evaluate(self, x: np.ndarray) -> float:
        x = self.check_dimension(x)
        self.evaluations += 1
        diff = x - self._center[: self._dim]
        return self.offset + float(np.sum(diff * diff))

    def optimum_value(self) -> float:
        return self.offset

    def change_count(self) -> int:
        return self.t


def sphere_problem(dimension=5, lower=-5.0, upper=5.0, **kwargs) -> StaticFunctionProblem:
    return StaticFunctionProblem(
        lambda x: float(np.sum(x * x)), dimension, lower, upper, **kwargs
    )


@pytest.fixture
def fake_rng_cls():
    return FakeRng


@pytest.fixture
def switchable_cls():
    return SwitchableProblem
