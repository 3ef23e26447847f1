"""The five classic base landscapes used inside composition problems.

All functions accept either a single vector or a batch with vectors along
the last axis, reduce over that axis, and have value 0 at the origin.
"""

from __future__ import annotations

import numpy as np

# Weierstrass series constants; the series is truncated at k_max.
_W_A = 0.5
_W_B = 3.0
_W_KMAX = 20
_W_AK = _W_A ** np.arange(_W_KMAX + 1)
_W_BK = _W_B ** np.arange(_W_KMAX + 1)
# per-dimension offset term, value of the inner series at x = 0
_W_C = float(np.sum(_W_AK * np.cos(np.pi * _W_BK)))

# Natural half-ranges, used to stretch composition offsets onto each
# landscape's own scale (search half-range 5 maps to these).
NATURAL_HALF_RANGE = {
    "sphere": 100.0,
    "rastrigin": 5.0,
    "weierstrass": 0.5,
    "griewank": 100.0,
    "ackley": 32.0,
}


def sphere(x: np.ndarray) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    return np.sum(x * x, axis=-1)


def rastrigin(x: np.ndarray) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    return np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def weierstrass(x: np.ndarray) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    inner = np.sum(
        _W_AK * np.cos(2.0 * np.pi * _W_BK * (x[..., None] + 0.5)), axis=-1
    )
    n = x.shape[-1]
    return np.sum(inner, axis=-1) - n * _W_C


def griewank(x: np.ndarray) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    idx = np.sqrt(np.arange(1, n + 1, dtype=float))
    return (
        np.sum(x * x, axis=-1) / 4000.0
        - np.prod(np.cos(x / idx), axis=-1)
        + 1.0
    )


def ackley(x: np.ndarray) -> np.ndarray | float:
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    quad = np.sqrt(np.sum(x * x, axis=-1) / n)
    trig = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n
    return -20.0 * np.exp(-0.2 * quad) - np.exp(trig) + 20.0 + np.e


BASE_FUNCTIONS = {
    "sphere": sphere,
    "rastrigin": rastrigin,
    "weierstrass": weierstrass,
    "griewank": griewank,
    "ackley": ackley,
}
