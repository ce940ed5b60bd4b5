"""Witness search for inf |N(w)| over w in tau(y) with w_{d+1} != 0.

For a fixed last coordinate n the slice of tau(y) is {(u, n) : u in n*y}, so
the search runs slice by slice with |N(w)| = |n| * |N(u)|. Only positive n
are visited: w and -w have the same product.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact.numfield import ProductValue, compare_abs, product_form
from ..exact.rational import to_fraction
from .core import Grid, tau_embed
from .enumerate import GridVector, grid_min_product


def scale_value(v, n: int):
    if isinstance(v, ProductValue):
        return ProductValue(v.q * n, v.factors)
    return v * n


@dataclass
class WitnessRecord:
    grid: Grid
    m: tuple
    n: int
    w: tuple  # unscaled coordinates of w in tau(y), last entry n
    bound: object  # |N(w)| unscaled
    covol_sq: Fraction
    R: Fraction
    n_max: int
    tie_flag: bool = False
    config_hash: str | None = None

    def recompute(self):
        """|N(w)| recomputed from (m, n) on the tau lattice."""
        tau = tau_embed(self.grid)
        w = tau.matvec(list(self.m) + [self.n])
        return abs(product_form(w)), w


@dataclass
class SearchResult:
    bound: object
    witness: WitnessRecord | None
    history: list = field(default_factory=list)  # (n, bound) at each strict improvement
    tie_flag: bool = False

    @property
    def is_zero(self) -> bool:
        return isinstance(self.bound, Fraction) and self.bound == 0


def _slice(args):
    y, R, n = args
    mp = grid_min_product(y, R, n)
    if mp.vector is None:
        return n, None, None, mp.tie_flag
    return n, scale_value(mp.value, n), mp.vector, mp.tie_flag


def littlewood_witness_search(y: Grid, R, n_max: int, workers: int = 1, config_hash: str | None = None) -> SearchResult:
    """Exact min of |N(w)| over w in tau(y), ||w||_inf <= R, 0 < w_{d+1} <= n_max."""
    R = to_fraction(R)
    if R <= 0 or n_max < 1:
        raise ValueError("need R > 0 and n_max >= 1")
    top = min(n_max, math.floor(R))
    result = SearchResult(None, None)
    best_vec: GridVector | None = None
    ns = list(range(1, top + 1))
    if workers > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            slices = list(ex.map(_slice, [(y, R, n) for n in ns], chunksize=max(1, len(ns) // (4 * workers))))
    else:
        slices = None
    for idx, n in enumerate(ns):
        n_, val, vec, tie = slices[idx] if slices is not None else _slice((y, R, n))
        result.tie_flag = result.tie_flag or tie
        if vec is None:
            continue
        if result.bound is None:
            better = True
        else:
            c, t = compare_abs(val, result.bound)
            result.tie_flag = result.tie_flag or t
            better = c < 0
        if better:
            result.bound = val
            best_vec = vec
            result.history.append((n, val))
            if isinstance(val, Fraction) and val == 0:
                break
    if best_vec is not None:
        w = best_vec.value + (Fraction(best_vec.n),)
        result.witness = WitnessRecord(
            grid=y,
            m=best_vec.m,
            n=best_vec.n,
            w=w,
            bound=result.bound,
            covol_sq=y.lattice.covol_sq_total(),
            R=R,
            n_max=n_max,
            tie_flag=result.tie_flag,
            config_hash=config_hash,
        )
    return result


@dataclass
class ScheduleRecord:
    R: Fraction
    n_max: int
    result: SearchResult


def witness_schedule(y: Grid, R0, n0: int, rounds: int, workers: int = 1) -> list[ScheduleRecord]:
    """Region growth with R and n_max doubling alternately; one record per round."""
    R, n = to_fraction(R0), n0
    out = []
    for k in range(rounds):
        res = littlewood_witness_search(y, R, n, workers)
        out.append(ScheduleRecord(R, n, res))
        if res.is_zero:
            break
        if k % 2 == 0:
            R = 2 * R
        else:
            n = 2 * n
    return out


def tau_slice_min(y: Grid, n: int, R):
    """min |N(w)| over w in tau(y) with w_{d+1} = n and ||w||_inf <= R,
    by enumerating the (d+1)-dimensional lattice with the last coordinate pinned."""
    from .enumerate import _Kernel

    R = to_fraction(R)
    tau = tau_embed(y)
    if not tau.is_rational():
        raise ValueError("tau_slice_min expects a rational grid")
    if abs(n) > R:
        return None
    d = tau.dim
    ker = _Kernel(tau)
    lo = [-R] * (d - 1) + [Fraction(n)]
    hi = [R] * (d - 1) + [Fraction(n)]
    best = None
    zero = [Fraction(0)] * d
    for m in ker.rational_points(zero, lo, hi):
        w = tau.matvec(m)
        val = abs(product_form(w))
        if best is None or val < best:
            best = val
    return best
