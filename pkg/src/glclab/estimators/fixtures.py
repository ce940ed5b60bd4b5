"""Calibration fixtures with known dimension or entropy."""

from __future__ import annotations

import numpy as np


def cantor_points(depth: int) -> np.ndarray:
    """Left endpoints of the 2^depth intervals of the middle-thirds construction."""
    pts = np.zeros(1)
    for k in range(1, depth + 1):
        pts = np.concatenate([pts, pts + 2.0 / 3**k])
    return np.sort(pts)


def cantor_eps(k_lo: int = 2, k_hi: int = 10) -> list[float]:
    return [3.0**-k for k in range(k_lo, k_hi + 1)]


def unit_square(n: int, rng: np.random.Generator) -> np.ndarray:
    return rng.random((n, 2))


def geometric_eps(eps_max: float, eps_min: float, rows: int) -> list[float]:
    return list(np.geomspace(eps_max, eps_min, rows))


def doubling_map(x: np.ndarray) -> np.ndarray:
    return (2.0 * x) % 1.0


def rotation(c: float):
    def step(x: np.ndarray) -> np.ndarray:
        return (x + c) % 1.0

    return step


def identity_map(x: np.ndarray) -> np.ndarray:
    return x


def lipschitz_distortion(x: np.ndarray) -> np.ndarray:
    """x + sin(x)/2 coordinatewise: bi-Lipschitz with constants 1/2 and 3/2."""
    return x + 0.5 * np.sin(x)
