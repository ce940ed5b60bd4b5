"""Bounded-region enumeration, shortest vectors and grid product minima.

Two enumeration kernels:

* rational bases: a triangular recursion on the Hermite normal form of the
  integer-scaled basis, coordinates taken last-to-first, exact throughout;
* other bases: a coefficient box from a rigorous bound on the inverse-basis
  operator norm, then an exact membership test per vector (interval
  prefilter, exact fallback).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from ..exact import linalg as LA
from ..exact.interval import PrecisionExhausted, RealInterval, precision_floor
from ..exact.numfield import MixedFieldError, compare_abs, interval_of, product_form
from ..exact.rational import common_denominator, root_bounds, to_fraction
from .core import Grid, Lattice
from .reduce import lll_columns, lll_reduce


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GridVector:
    m: tuple  # integer coefficients: value = B(m + n t)
    n: int | None
    value: tuple  # unscaled coordinates
    flagged: bool = False

    def tau_value(self) -> tuple:
        return self.value + (Fraction(self.n),)


def _floor(x) -> int:
    return math.floor(x)


def _ceil(x) -> int:
    return math.ceil(x)


def _unscaled_bounds(lat: Lattice, R: Fraction) -> list[Fraction]:
    """Rational upper bounds on the unscaled coordinate radius per row."""
    out = []
    for i in range(lat.dim):
        g = lat.row_group(i)
        if g is None:
            out.append(R)
        else:
            out.append(R * g.inverse_factor_bounds(64)[1])
    return out


def _offset(y, n: int | None) -> tuple:
    if isinstance(y, Grid):
        mult = 1 if n is None else n
        return tuple(mult * c for c in y.t)
    return tuple(Fraction(0) for _ in range(y.dim))


class _Kernel:
    """Enumerates integer m with B(m + s) inside per-coordinate boxes."""

    def __init__(self, lat: Lattice, max_nodes: int | None = None):
        self.lat = lat
        self.d = lat.dim
        self.max_nodes = max_nodes
        self.nodes = 0
        self.rational = lat.is_rational_unscaled()
        if self.rational:
            self.D = common_denominator(x for r in lat.basis for x in r)
            c = [[int(x * self.D) for x in r] for r in lat.basis]
            rev = c[::-1]
            self.H, self.U = LA.hnf_columns(rev)
            self.Uinv = LA.to_int(LA.inverse(self.U))
        else:
            self._setup_box()

    def _tick(self):
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            raise BudgetExceeded(f"enumeration exceeded {self.max_nodes} nodes")

    # -- rational kernel ---------------------------------------------------

    def rational_points(self, s: Sequence, lo: Sequence, hi: Sequence) -> Iterator[tuple]:
        d, H, D = self.d, self.H, self.D
        sigma = []
        for r in self.Uinv:
            acc = Fraction(0)
            for c, x in zip(r, s):
                if c:
                    acc = acc + c * x
            sigma.append(acc)
        lo_r = [D * x for x in lo[::-1]]
        hi_r = [D * x for x in hi[::-1]]
        k = [0] * d
        vals = [None] * d

        def rec(i):
            self._tick()
            p = Fraction(0)
            for j in range(i):
                if H[i][j]:
                    p = p + H[i][j] * (k[j] + sigma[j])
            h = H[i][i]
            a = _ceil((lo_r[i] - p) / h - sigma[i])
            b = _floor((hi_r[i] - p) / h - sigma[i])
            for ki in range(a, b + 1):
                k[i] = ki
                vals[i] = p + h * (ki + sigma[i])
                if i + 1 == d:
                    yield tuple(k)
                else:
                    yield from rec(i + 1)

        for kk in rec(0):
            yield tuple(sum(self.U[r][c] * kk[c] for c in range(d)) for r in range(d))

    # -- general kernel ------------------------------------------------------

    def _setup_box(self):
        w = Fraction(1, 2**48)
        while True:
            bi = self.lat.interval_basis(w, scaled=True)
            mid = [[x.mid for x in r] for r in bi]
            try:
                minv = LA.inverse(mid)
            except ZeroDivisionError:
                w = w * w
                continue
            # E = I - Minv * Bi, entrywise interval
            e_norm = Fraction(0)
            for i in range(self.d):
                row = Fraction(0)
                for j in range(self.d):
                    acc = RealInterval.point(int(i == j))
                    for k in range(self.d):
                        if minv[i][k]:
                            acc = acc - bi[k][j] * minv[i][k]
                    row += abs(acc).hi
                e_norm = max(e_norm, row)
            if e_norm < Fraction(1, 2):
                break
            if w < precision_floor():
                raise PrecisionExhausted("inverse-basis bound not certified")
            w = w * w
        m_norm = max(sum(abs(x) for x in r) for r in minv)
        self.inv_bound = m_norm / (1 - e_norm)
        self.ibasis = bi

    def box_points(self, s: Sequence, radius: Fraction) -> Iterator[tuple]:
        """All m with ||m + s||_inf <= radius * ||B^{-1}||, a superset of the hits."""
        k = radius * self.inv_bound
        ranges = []
        for sj in s:
            ranges.append(range(_ceil(-k - sj), _floor(k - sj) + 1))
        yield from _product(ranges, self._tick)


def _product(ranges, tick):
    d = len(ranges)
    idx = [0] * d

    def rec(i):
        for v in ranges[i]:
            idx[i] = v
            if i + 1 == d:
                tick()
                yield tuple(idx)
            else:
                yield from rec(i + 1)

    if d:
        yield from rec(0)


def _exact_value(lat: Lattice, m: Sequence, s: Sequence) -> tuple:
    return lat.matvec([mi + si for mi, si in zip(m, s)])


def _membership(lat: Lattice, ivals, value, radius: Fraction) -> tuple[bool, bool]:
    """(inside, flagged) for the sup-norm ball of the given radius."""
    flagged = False
    for i in range(lat.dim):
        iv = ivals[i] if ivals is not None else None
        if iv is not None and abs(iv).hi <= radius:
            continue
        if iv is not None and abs(iv).lo > radius:
            return False, False
        try:
            if not lat.coord_within(i, value[i], radius):
                return False, False
        except PrecisionExhausted:
            flagged = True
    return True, flagged


def iter_grid_points(y: Grid | Lattice, R, n: int | None = None, max_nodes: int | None = None, kernel: _Kernel | None = None) -> Iterator[GridVector]:
    """Every point of y (or of n*y) with scaled sup-norm <= R, exactly once."""
    R = to_fraction(R)
    if R < 0:
        raise ValueError("R must be nonnegative")
    lat = y.lattice if isinstance(y, Grid) else y
    s = _offset(y, n)
    ker = kernel or _Kernel(lat, max_nodes)
    if ker.rational:
        bounds = _unscaled_bounds(lat, R)
        try:
            gen = ker.rational_points(s, [-b for b in bounds], bounds)
            for m in gen:
                value = _exact_value(lat, m, s)
                if lat.scale:
                    inside, flag = _membership(lat, None, value, R)
                    if not inside:
                        continue
                else:
                    flag = False
                yield GridVector(tuple(m), n, value, flag)
            return
        except MixedFieldError:
            ker = _Kernel.__new__(_Kernel)
            ker.__dict__.update(lat=lat, d=lat.dim, max_nodes=max_nodes, nodes=0, rational=False)
            ker._setup_box()
    sint = [interval_of(x, Fraction(1, 2**48)) for x in s]
    for m in ker.box_points(s, R):
        ivals = []
        for i in range(lat.dim):
            acc = RealInterval.point(0)
            for j in range(lat.dim):
                acc = acc + ker.ibasis[i][j] * (sint[j] + m[j])
            ivals.append(acc)
        if any(abs(iv).lo > R for iv in ivals):
            continue
        value = _exact_value(lat, m, s)
        inside, flag = _membership(lat, ivals, value, R)
        if inside:
            yield GridVector(tuple(m), n, value, flag)


def enumerate_grid_points(y: Grid | Lattice, R, n: int | None = None, max_nodes: int | None = None) -> list[GridVector]:
    return list(iter_grid_points(y, R, n, max_nodes))


# -- product minima ---------------------------------------------------------


def tie_key(m: Sequence[int]) -> tuple:
    return (max((abs(x) for x in m), default=0), tuple(m))


@dataclass
class MinProduct:
    value: object  # |N(u)| unscaled: Fraction, Embedded, ProductValue
    vector: GridVector | None
    tie_flag: bool = False
    count: int = 0


def _better(val, key, best: MinProduct, best_key) -> tuple[bool, bool]:
    if best.vector is None:
        return True, False
    c, tie = compare_abs(val, best.value)
    if c < 0:
        return True, False
    if c == 0 and key < best_key:
        return True, tie
    return False, tie


def grid_min_product(y: Grid | Lattice, R, n: int | None = None, max_nodes: int | None = None) -> MinProduct:
    """Exact minimum of |N(u)| over u in y (or n*y) with sup-norm <= R.

    The value is the unscaled product; the scaled value divides it by
    sqrt(lattice.covol_sq_total()).
    """
    R = to_fraction(R)
    lat = y.lattice if isinstance(y, Grid) else y
    s = _offset(y, n)
    fast = _diagonal_fast(lat, s, R, n)
    if fast is not None:
        return fast
    best = MinProduct(None, None)
    best_key = None
    if lat.is_rational_unscaled() and not lat.scale:
        try:
            return _min_product_rational(lat, s, R, n, max_nodes)
        except MixedFieldError:
            pass
    for gv in iter_grid_points(y, R, n, max_nodes):
        val = abs_value(product_form(gv.value))
        key = tie_key(gv.m)
        better, tie = _better(val, key, best, best_key)
        best.count += 1
        best.tie_flag = best.tie_flag or tie or gv.flagged
        if better:
            best.value, best.vector, best_key = val, gv, key
    return best


def abs_value(v):
    if isinstance(v, Fraction):
        return abs(v)
    return abs(v)


def _min_product_rational(lat: Lattice, s, R, n, max_nodes) -> MinProduct:
    ker = _Kernel(lat, max_nodes)
    d, H, D = ker.d, ker.H, ker.D
    sigma = []
    for r in ker.Uinv:
        acc = Fraction(0)
        for c, x in zip(r, s):
            if c:
                acc = acc + c * x
        sigma.append(acc)
    bound = D * R
    k = [0] * d
    best = MinProduct(None, None)
    state = {"key": None}

    def consider(vals):
        mm = tuple(sum(ker.U[r][c] * k[c] for c in range(d)) for r in range(d))
        prod = Fraction(1)
        for v in vals:
            prod = prod * v
        val = abs(prod) / Fraction(D) ** d if isinstance(prod, Fraction) else abs(product_form([v / D for v in vals]))
        key = tie_key(mm)
        better, tie = _better(val, key, best, state["key"])
        best.count += 1
        best.tie_flag = best.tie_flag or tie
        if better:
            best.value = val
            best.vector = GridVector(mm, n, _exact_value(lat, mm, s))
            state["key"] = key

    vals = [None] * d

    def rec(i, prefix_zero):
        ker._tick()
        p = Fraction(0)
        for j in range(i):
            if H[i][j]:
                p = p + H[i][j] * (k[j] + sigma[j])
        h = H[i][i]
        a = _ceil((-bound - p) / h - sigma[i])
        b = _floor((bound - p) / h - sigma[i])
        if a > b:
            return
        if i + 1 == d and not prefix_zero:
            # |value| is minimized by the integers nearest to the zero crossing
            x0 = -p / h - sigma[i]
            cands = sorted({min(max(_floor(x0), a), b), min(max(_ceil(x0), a), b)})
            scored = [(abs(p + h * (c + sigma[i])), c) for c in cands]
            lo = min(v for v, _ in scored)
            for v, c in scored:
                if v == lo:
                    k[i] = c
                    vals[i] = p + h * (c + sigma[i])
                    consider(vals)
            return
        for ki in range(a, b + 1):
            k[i] = ki
            vals[i] = p + h * (ki + sigma[i])
            z = prefix_zero or vals[i] == 0
            if i + 1 == d:
                consider(vals)
            else:
                rec(i + 1, z)

    rec(0, False)
    return best


def _diagonal_fast(lat: Lattice, s, R, n) -> MinProduct | None:
    """Independent coordinates: minimize each |u_i| separately.

    Only used when no coordinate offset is an integer or half-integer, so
    each coordinate has a unique minimizer and the product is positive.
    """
    if not lat.is_diagonal():
        return None
    for x in s:
        if isinstance(x, Fraction) and (2 * x).denominator == 1:
            return None
    ms, vals = [], []
    for i in range(lat.dim):
        si = s[i]
        m = -_floor(si + Fraction(1, 2))
        u = lat.basis[i][i] * (m + si)
        try:
            ok = lat.coord_within(i, u, R)
        except PrecisionExhausted:
            return None
        if not ok:
            return MinProduct(None, None)
        ms.append(m)
        vals.append(u)
    val = abs_value(product_form(vals))
    return MinProduct(val, GridVector(tuple(ms), n, tuple(vals)), False, 1)


# -- shortest vectors ------------------------------------------------------------


@dataclass
class ShortestVector:
    length: RealInterval
    vector: tuple  # unscaled coordinates
    coeffs: tuple
    tie_flag: bool = False


def _canonical_sign(m):
    for x in m:
        if x:
            return tuple(m) if x > 0 else tuple(-c for c in m)
    return tuple(m)


def shortest_vector(x: Lattice, width=Fraction(1, 2**40)) -> ShortestVector:
    """Certified shortest nonzero vector in the (scaled) sup-norm."""
    if x.is_rational():
        return _shortest_rational(x)
    return _shortest_general(x, Fraction(width))


def _shortest_rational(x: Lattice) -> ShortestVector:
    red, u = lll_reduce(x)
    cols = red.columns()
    d = x.dim
    l0 = min(max(abs(c) for c in col) for col in cols)
    # sup <= l0 implies Euclidean^2 <= d * l0^2
    gram = [[sum((a * b for a, b in zip(ci, cj)), Fraction(0)) for cj in cols] for ci in cols]
    best = None
    for coeffs in fincke_pohst(gram, d * l0 * l0):
        v = tuple(sum((cols[j][i] * coeffs[j] for j in range(d)), Fraction(0)) for i in range(d))
        sup = max(abs(c) for c in v)
        m = tuple(sum(u[r][j] * coeffs[j] for j in range(d)) for r in range(d))
        m = _canonical_sign(m)
        key = (sup, tie_key(m))
        if best is None or key < best[0]:
            best = (key, m)
    (sup, _), m = best
    v = x.matvec(m)
    return ShortestVector(RealInterval.point(sup), v, m)


def _sqrt_upper(q: Fraction) -> Fraction:
    return root_bounds(q, 2, 32)[1]


def fincke_pohst(gram: Sequence[Sequence[Fraction]], bound: Fraction) -> Iterator[tuple]:
    """Nonzero integer vectors c with c^T G c <= bound (one of each +-pair)."""
    n = len(gram)
    # Cholesky-type decomposition q_ii, q_ij (exact)
    q = [[Fraction(x) for x in r] for r in gram]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for l in range(k, n):
                q[k][l] -= q[k][i] * q[i][l]
    x = [0] * n
    found = []

    def rec(i, rem):
        c = sum((q[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        r = _sqrt_upper(rem / q[i][i])
        lo, hi = _ceil(-r - c), _floor(r - c)
        for xi in range(lo, hi + 1):
            t = q[i][i] * (xi + c) ** 2
            if t > rem:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    found.append(tuple(x))
            else:
                rec(i - 1, rem - t)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    seen = set()
    for v in found:
        cv = _canonical_sign(v)
        if cv not in seen:
            seen.add(cv)
            yield cv


def _approx_reduction(x: Lattice) -> list[list[int]]:
    """Unimodular T making x.B*T nearly LLL-reduced (LLL on rational
    midpoints of the scaled basis; T is exact, only its quality is approximate)."""
    bi = x.interval_basis(Fraction(1, 2**64), scaled=True)
    cols = [[bi[i][j].mid for i in range(x.dim)] for j in range(x.dim)]
    _, t = lll_columns(cols)
    return t


def _shortest_general(x: Lattice, width: Fraction) -> ShortestVector:
    t = _approx_reduction(x)
    cols = [x.matvec([t[k][j] for k in range(x.dim)]) for j in range(x.dim)]
    rows = [[cols[j][i] for j in range(x.dim)] for i in range(x.dim)]
    red = Lattice(rows, x.scale, x.field_type, det_sq=x.det_sq(), check=False)
    sv = _shortest_reduced(red, width)
    live = [tuple(sum(t[r][c] * m[c] for c in range(x.dim)) for r in range(x.dim)) for m in sv.coeffs]
    m = min((_canonical_sign(c) for c in live), key=tie_key)
    return ShortestVector(sv.length, x.matvec(m), m, sv.tie_flag)


def _shortest_reduced(x: Lattice, width: Fraction) -> ShortestVector:
    """Like ShortestVector, but ``coeffs`` lists every coefficient vector
    still tied at the end (usually one)."""
    ker = _Kernel(x)
    d = x.dim
    cols_iv = [[ker.ibasis[i][j] for i in range(d)] for j in range(d)]
    l0 = min(max(abs(iv).hi for iv in col) for col in cols_iv)
    cands = []
    best_hi = None
    zero = tuple(Fraction(0) for _ in range(d))
    for m in ker.box_points(zero, l0):
        if not any(m):
            continue
        m = _canonical_sign(m)
        if m in cands:
            continue
        ivs = []
        for i in range(d):
            acc = RealInterval.point(0)
            for j in range(d):
                if m[j]:
                    acc = acc + ker.ibasis[i][j] * m[j]
            ivs.append(abs(acc))
        sup = RealInterval(max(iv.lo for iv in ivs), max(iv.hi for iv in ivs))
        if best_hi is not None and sup.lo > best_hi:
            continue
        best_hi = sup.hi if best_hi is None else min(best_hi, sup.hi)
        cands.append((m, sup))
    seen = {}
    for m, sup in cands:
        if sup.lo <= best_hi:
            seen[m] = None
    live = list(seen)
    w = Fraction(1, 2**48)
    tie = False
    while True:
        sups = {}
        for m in live:
            v = x.matvec(m)
            ivs = [abs(x.scaled_interval(i, v[i], w)) for i in range(d)]
            sups[m] = RealInterval(max(iv.lo for iv in ivs), max(iv.hi for iv in ivs))
        top = min(s.hi for s in sups.values())
        live = [m for m in live if sups[m].lo <= top]
        if len(live) == 1 and sups[live[0]].width <= width:
            break
        if w < Fraction(1, 2**160):
            tie = len(live) > 1
            break
        w = w * w if w < Fraction(1, 2**64) else w / 2**32
    m = min(live, key=tie_key)
    tied = [c for c in live if sups[c].lo <= sups[m].hi] if tie else [m]
    return ShortestVector(sups[m], x.matvec(m), tuple(tied), tie)
