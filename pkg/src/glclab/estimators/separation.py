"""Separated sets, covers and upper box dimension of finite point clouds.

All outputs here are estimates. Greedy packings replace maximum packings,
which moves log-counts by a bounded amount and leaves fitted slopes alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

Metric = Callable[[np.ndarray, np.ndarray], np.ndarray]


def euclidean(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sqrt(((a - b) ** 2).sum(axis=-1))


def sup(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(a - b).max(axis=-1)


def torus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Sup distance on R^k / Z^k."""
    diff = np.abs(a - b) % 1.0
    return np.minimum(diff, 1.0 - diff).max(axis=-1)


METRICS = {"euclidean": euclidean, "sup": sup, "torus": torus}


class PointCloud:
    """Finite point set with a symmetric distance oracle.

    ``metric`` maps an (m, k) array and a (k,) point to the m distances.
    Points are visited in lexicographic order so greedy results do not
    depend on how the cloud was assembled.
    """

    def __init__(self, points, metric: str | Metric = "euclidean", labels: Sequence | None = None):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts[:, None]
        if pts.ndim != 2:
            raise ValueError("points must form an (n, k) array")
        if isinstance(metric, str):
            if metric not in METRICS:
                raise ValueError(f"unknown metric {metric!r}; choose from {sorted(METRICS)} or pass a callable")
            metric = METRICS[metric]
        elif not callable(metric):
            raise ValueError("metric must be a name or a callable")
        order = np.lexsort(pts.T[::-1]) if len(pts) else np.arange(0)
        self.points = pts[order]
        self.metric = metric
        self.labels = None if labels is None else [labels[i] for i in order]

    def __len__(self):
        return len(self.points)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def distances(self, idx: np.ndarray, j: int) -> np.ndarray:
        return self.metric(self.points[idx], self.points[j])


def greedy_separated(dist_to: Callable[[np.ndarray, int], np.ndarray], n: int, eps: float, limit: int | None = None) -> list[int]:
    """Indices of a maximal eps-separated subset (distances >= eps), in visiting order.

    Stops once ``limit`` points are chosen.
    """
    chosen: list[int] = []
    buf = np.empty(n, dtype=np.int64)
    for j in range(n):
        if chosen:
            if dist_to(buf[: len(chosen)], j).min() < eps:
                continue
        buf[len(chosen)] = j
        chosen.append(j)
        if limit is not None and len(chosen) >= limit:
            break
    return chosen


def separated_count(cloud: PointCloud, eps: float) -> int:
    if eps <= 0:
        raise ValueError("eps must be positive")
    if len(cloud) == 0:
        return 0
    return len(greedy_separated(cloud.distances, len(cloud), eps))


PAIR_BUDGET = 4_000_000  # neighbour pairs materialized by the set-cover search


def _neighbour_lists(cloud: PointCloud, eps: float):
    """Sparse open eps-ball adjacency for the built-in metrics, or None."""
    from scipy.spatial import cKDTree

    if cloud.metric is euclidean:
        tree, p = cKDTree(cloud.points), 2.0
    elif cloud.metric is sup:
        tree, p = cKDTree(cloud.points), np.inf
    elif cloud.metric is torus:
        tree, p = cKDTree(cloud.points % 1.0, boxsize=1.0), np.inf
    else:
        return None
    r = np.nextafter(eps, 0.0)  # closed ball of the previous float = open ball of radius eps
    if tree.count_neighbors(tree, r, p=p) > PAIR_BUDGET:
        return None
    return tree.query_ball_point(tree.data, r, p=p)


def _greedy_set_cover(nbrs) -> int:
    """Greedy cover of all points by balls centred at points (lazy max-gain)."""
    import heapq

    n = len(nbrs)
    covered = np.zeros(n, dtype=bool)
    heap = [(-len(nb), i) for i, nb in enumerate(nbrs)]
    heapq.heapify(heap)
    left, used = n, 0
    while left:
        g, i = heapq.heappop(heap)
        gain = int((~covered[nbrs[i]]).sum())
        if gain == 0:
            continue
        if heap and gain < -heap[0][0]:
            heapq.heappush(heap, (-gain, i))
            continue
        covered[nbrs[i]] = True
        left -= gain
        used += 1
    return used


def cover_count(cloud: PointCloud, eps: float, packing: int | None = None) -> int:
    """Size of an explicit cover by open eps-balls centred in the cloud.

    The smaller of a greedy set cover and a maximal eps-separated set (which
    is itself a cover). Being a genuine cover it bounds the minimal cover
    from above, and it never exceeds the greedy packing.
    """
    if len(cloud) == 0:
        return 0
    if packing is None:
        packing = separated_count(cloud, eps)
    nbrs = _neighbour_lists(cloud, eps)
    if nbrs is None:
        return packing
    return min(packing, _greedy_set_cover(nbrs))


@dataclass
class SeparationCurve:
    """Rows (eps, S_eps, N_eps, N_{eps/2}) with eps strictly decreasing."""

    rows: list = field(default_factory=list)

    def eps(self) -> np.ndarray:
        return np.array([r[0] for r in self.rows])

    def counts(self) -> np.ndarray:
        return np.array([r[1] for r in self.rows])

    def sandwich_holds(self) -> bool:
        return all(n <= s and (nh is None or s <= nh) for _, s, n, nh in self.rows)

    def monotone(self) -> bool:
        c = self.counts()
        return bool(np.all(np.diff(c) >= 0))

    def to_csv_rows(self) -> list:
        return [("eps", "S", "N", "N_half")] + [(repr(float(e)), s, n, "" if nh is None else nh) for e, s, n, nh in self.rows]


def separation_curve(cloud: PointCloud, eps_list: Sequence[float], covers: bool = True) -> SeparationCurve:
    eps = sorted({float(e) for e in eps_list}, reverse=True)
    if any(e <= 0 for e in eps):
        raise ValueError("eps values must be positive")
    rows = []
    for e in eps:
        s = separated_count(cloud, e)
        if covers:
            rows.append((e, s, cover_count(cloud, e, s), cover_count(cloud, e / 2)))
        else:
            rows.append((e, s, None, None))
    return SeparationCurve(rows)


@dataclass
class DimensionEstimate:
    value: float
    band: float  # residual-based half-width of the slope
    window: tuple  # (first, last) row indices used
    degenerate: bool = False
    label: str = "ESTIMATE"


def fit_slope(x: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """Least-squares slope and its standard error."""
    if len(x) < 2:
        return 0.0, float("inf")
    A = np.vstack([x, np.ones_like(x)]).T
    coef, res, *_ = np.linalg.lstsq(A, y, rcond=None)
    slope = float(coef[0])
    if len(x) > 2:
        r = y - A @ coef
        s2 = float(r @ r) / (len(x) - 2)
        sxx = float(((x - x.mean()) ** 2).sum())
        se = (s2 / sxx) ** 0.5 if sxx > 0 else float("inf")
    else:
        se = 0.0
    return slope, se


def box_dimension_estimate(curve: SeparationCurve, drop_large: float = 0.25, drop_small: float = 0.10) -> DimensionEstimate:
    """Slope of log S_eps against |log eps| on a tail window of the curve."""
    if len(curve.rows) < 4:
        raise ValueError("need at least 4 rows")
    eps = curve.eps()
    s = curve.counts().astype(float)
    n = len(eps)
    lo = int(np.floor(n * drop_large))
    hi = n - int(np.floor(n * drop_small))
    if hi - lo < 2:
        lo, hi = 0, n
    if np.all(s == s[0]):
        return DimensionEstimate(0.0, 0.0, (lo, hi - 1), degenerate=True)
    x = -np.log(eps[lo:hi])
    y = np.log(s[lo:hi])
    slope, se = fit_slope(x, y)
    return DimensionEstimate(slope, 2 * se, (lo, hi - 1))
