"""Scalar update rules of the quantum-behaved chaotic salp swarm.

These are the per-dimension building blocks; the optimizer applies the
same formulas vectorized.  Keeping the scalar forms separate makes the
arithmetic directly testable against hand-computed values.
"""

from __future__ import annotations

import math

import numpy as np

LOGISTIC_D = 4.0
CHAOTIC_SCALE = 3.0
FOLLOWER_GAIN = 0.75


def logistic_step(w: float, d: float = LOGISTIC_D) -> float:
    """One step of the logistic map ``w' = d * w * (1 - w)``."""
    if not 0.0 < w < 1.0:
        raise ValueError("logistic map state must lie strictly inside (0, 1)")
    return d * w * (1.0 - w)


def chaotic_operator(w: float, rng: np.random.Generator) -> float:
    """Chaos-modulated scale ``u = 3 * w * (1 - w) * c4`` with c4 in (0, 1]."""
    if not 0.0 < w < 1.0:
        raise ValueError("chaotic operator needs w inside (0, 1)")
    c4 = 1.0 - rng.random()  # (0, 1]; never zero, so u stays positive
    return CHAOTIC_SCALE * w * (1.0 - w) * c4


def contraction_expansion(l: int, max_iterations: int) -> float:
    """Exploration amplitude ``B = 0.5 * (L - l) / (l + 0.5)``.

    Non-negative, strictly decreasing, and exactly zero at the final
    iteration; at l = 0 it equals L, so early iterations roam widely.
    """
    if max_iterations <= 0:
        raise ValueError("max_iterations must be positive")
    if not 0 <= l <= max_iterations:
        raise ValueError("iteration index out of schedule range")
    return 0.5 * (max_iterations - l) / (l + 0.5)


def follower_coefficient(l: int, max_iterations: int) -> float:
    """Follower step gain ``C = 0.75 * sin(pi/4) * (1 - l/L)``."""
    if max_iterations <= 0:
        raise ValueError("max_iterations must be positive")
    if not 0 <= l <= max_iterations:
        raise ValueError("iteration index out of schedule range")
    return FOLLOWER_GAIN * math.sin(math.pi / 4.0) * (1.0 - l / max_iterations)


def local_attractor(
    x: float,
    food: float,
    rng: np.random.Generator,
    literal_denominator: bool = False,
) -> float:
    """Random convex blend of a position and the food position.

    ``A = (r1 * x + r2 * food) / (r1 + r2)`` with r1, r2 in (0, 1].  The
    ``literal_denominator`` variant divides by ``2 * r1`` instead, which is
    no longer a convex combination; it exists for sensitivity checks only.
    """
    r1 = 1.0 - rng.random()
    r2 = 1.0 - rng.random()
    denom = 2.0 * r1 if literal_denominator else r1 + r2
    return (r1 * x + r2 * food) / denom


def quantum_update(
    x: float,
    attractor: float,
    b_l: float,
    bestmean: float,
    w: float,
    rng: np.random.Generator,
    c3_threshold: float = 0.5,
) -> float:
    """Quantum-style jump around the attractor.

    Draw order is c4 (via the chaotic operator), then r, then the side
    coin c3.  The displacement is ``B * |bestmean - x| * ln(r / u)`` and
    is added or subtracted with equal probability.  Callers clamp the
    result to the search bounds.
    """
    u = chaotic_operator(w, rng)
    r = 1.0 - rng.random()
    c3 = 1.0 - rng.random()
    step = b_l * abs(bestmean - x) * math.log(r / u)
    return attractor + step if c3 > c3_threshold else attractor - step


def follower_update(
    x_i: float,
    x_prev: float,
    x_prev2: float,
    attractor: float,
    c: float,
    momentum: float,
) -> float:
    """Chain-following move anchored on the predecessor's position."""
    return x_prev + c * (attractor - x_i) + momentum * (x_prev - x_prev2)
