"""Torus sampling of grids whose witness search stays above a threshold."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..exact.numfield import as_scalar, compare_abs
from ..exact.rational import to_fraction
from ..lattice.core import Grid, Lattice
from ..lattice.witness import littlewood_witness_search
from .separation import PointCloud


@dataclass
class SamplerResult:
    cloud: PointCloud
    survivors: list  # (t, bound) pairs, bound None when the region held no vector
    tested: int
    label: str = "ESTIMATE"


def exception_sampler(
    x: Lattice,
    resolution: int,
    R,
    n_max: int,
    threshold,
    offset: Sequence | None = None,
    window: Fraction | None = None,
) -> SamplerResult:
    """Keep translations t = offset + k * window / resolution whose bound stays >= threshold.

    With the defaults the translations are the points k / resolution of the
    fundamental torus. ``offset`` may hold irrational scalars to probe a
    neighbourhood of a non-torsion point.
    """
    if not x.is_unimodular():
        raise ValueError("sampler expects a unimodular lattice")
    if resolution < 1:
        raise ValueError("resolution must be >= 1")
    d = x.dim
    off = [as_scalar(c) for c in offset] if offset is not None else [Fraction(0)] * d
    win = to_fraction(window) if window is not None else Fraction(1)
    thr = to_fraction(threshold)
    survivors = []
    tested = 0
    for ks in itertools.product(range(resolution), repeat=d):
        t = tuple(o + win * Fraction(k, resolution) for o, k in zip(off, ks))
        y = Grid(x, t)
        res = littlewood_witness_search(y, R, n_max)
        tested += 1
        if res.bound is None:
            survivors.append((y.t, None))
            continue
        c, _ = compare_abs(res.bound, thr)
        if c >= 0:
            survivors.append((y.t, res.bound))
    pts = np.array([[float(c) for c in t] for t, _ in survivors]).reshape(len(survivors), d)
    cloud = PointCloud(pts, "torus", labels=[b for _, b in survivors])
    return SamplerResult(cloud, survivors, tested)
