"""(n, eps)-separated counts along trajectories and the entropy slope."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .separation import PointCloud, fit_slope, greedy_separated

SATURATION = 0.1  # counts above this fraction of the cloud are not used in fits


def trajectories(step_map: Callable[[np.ndarray], np.ndarray], points: np.ndarray, n_max: int) -> np.ndarray:
    """Array (n_max + 1, m, k) of iterates a^i x."""
    out = [points]
    cur = points
    for _ in range(n_max):
        cur = np.asarray(step_map(cur), dtype=float).reshape(points.shape)
        out.append(cur)
    return np.stack(out)


def bowen_count(cloud: PointCloud, traj: np.ndarray, n: int, eps: float, limit: int | None = None) -> int:
    """Greedy (n, eps)-separated count: separated iff max_{i<n} d(a^i x, a^i y) >= eps."""
    seg = traj[: max(n, 1)]

    def dist(idx, j):
        return cloud.metric(seg[:, idx, :], seg[:, j, None, :]).max(axis=0)

    return len(greedy_separated(dist, len(cloud), eps, limit))


@dataclass
class EntropyEstimate:
    value: float
    per_eps: dict  # eps -> (slope, n values used)
    counts: dict  # eps -> list of (n, S_{n,eps})
    exited: bool = False
    label: str = "ESTIMATE"
    notes: list = field(default_factory=list)


def entropy_estimate(
    step_map: Callable[[np.ndarray], np.ndarray],
    cloud: PointCloud,
    n_range: Sequence[int],
    eps_list: Sequence[float],
    domain: tuple | None = None,
    saturation: float = SATURATION,
) -> EntropyEstimate:
    """max over eps of the slope of log S_{n,eps} against n over ``n_range``.

    Rows with S_{n,eps} above ``saturation * len(cloud)`` are excluded: a
    finite sample cannot show growth past its own size.
    """
    ns = sorted(set(int(n) for n in n_range))
    if not ns or ns[0] < 0:
        raise ValueError("n_range must be nonempty and nonnegative")
    traj = trajectories(step_map, cloud.points, max(ns))
    exited = False
    if domain is not None:
        lo, hi = domain
        exited = bool(np.any(traj < lo) or np.any(traj > hi) or not np.all(np.isfinite(traj)))
    cap = saturation * len(cloud)
    per_eps, counts = {}, {}
    best = None
    notes = []
    for eps in eps_list:
        rows = []
        for n in ns:
            # counts are nondecreasing in n, so stop at the first saturated row
            s = bowen_count(cloud, traj, n, eps, limit=int(cap) + 1)
            rows.append((n, s))
            if s > cap:
                break
        counts[eps] = rows
        used = [(n, s) for n, s in rows if s <= cap]
        if len(used) < 2:
            notes.append(f"eps={eps}: fewer than two unsaturated rows")
            continue
        slope, _ = fit_slope(np.array([u[0] for u in used], float), np.log(np.array([u[1] for u in used], float)))
        per_eps[eps] = (slope, [u[0] for u in used])
        if best is None or slope > best:
            best = slope
    return EntropyEstimate(0.0 if best is None else max(best, 0.0), per_eps, counts, exited, notes=notes)
