"""Lattices and grids with exact entries and a symbolic unimodular scale.

A lattice stores an unscaled basis ``B`` (rows are coordinates, columns are
basis vectors) plus scale groups. Rows in a group with covolume square ``C``
and ``k`` rows are multiplied by ``C**(-1/(2k))`` when the lattice is viewed
as a point of the space of unimodular lattices. Rational roots are folded
into the basis on construction so a remaining group is always irrational.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exact import linalg as LA
from ..exact.interval import PrecisionExhausted, RealInterval, precision_floor
from ..exact.numfield import (
    Embedded,
    MixedFieldError,
    NumberField,
    as_scalar,
    field_coords,
    interval_of,
    product_form,
)
from ..exact.rational import exact_root, root_bounds, to_fraction


class SingularBasis(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class ScaleGroup:
    rows: tuple
    covol_sq: Fraction

    def factor_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        """Rational bounds on the row multiplier covol_sq**(-1/(2k))."""
        lo, hi = root_bounds(self.covol_sq, 2 * len(self.rows), bits)
        return 1 / hi, 1 / lo

    def inverse_factor_bounds(self, bits: int = 64) -> tuple[Fraction, Fraction]:
        return root_bounds(self.covol_sq, 2 * len(self.rows), bits)


def _is_rational(x) -> bool:
    return isinstance(x, Fraction)


class Lattice:
    """Full-rank lattice in R^d spanned by the columns of ``basis``."""

    __slots__ = ("basis", "scale", "field_type", "_det_sq", "_row_group")

    def __init__(self, basis: Sequence[Sequence], scale: Sequence[ScaleGroup] = (), field_type=None, det_sq=None, check=True):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in basis)
        d = len(rows)
        if d == 0 or any(len(r) != d for r in rows):
            raise ValueError("basis must be a nonempty square matrix")
        groups = []
        rows = [list(r) for r in rows]
        seen = set()
        for g in scale:
            g = ScaleGroup(tuple(g.rows), to_fraction(g.covol_sq))
            if g.covol_sq <= 0:
                raise ValueError("scale group covolume square must be positive")
            if seen & set(g.rows):
                raise ValueError("scale groups overlap")
            seen |= set(g.rows)
            root = exact_root(g.covol_sq, 2 * len(g.rows))
            if root is not None:
                for i in g.rows:
                    rows[i] = [x / root if x != 0 else x for x in rows[i]]
                if det_sq is not None:
                    det_sq = det_sq / g.covol_sq
                continue
            groups.append(g)
        self.basis = tuple(tuple(r) for r in rows)
        self.scale = tuple(groups)
        self.field_type = field_type
        self._row_group = {i: g for g in self.scale for i in g.rows}
        if det_sq is None and self.is_rational():
            det_sq = LA.det(self.basis) ** 2
        self._det_sq = det_sq
        if check:
            self._check_nonsingular()

    def _check_nonsingular(self):
        if self._det_sq is not None:
            if self._det_sq == 0:
                raise SingularBasis("basis is singular")
            return
        w = Fraction(1, 2**32)
        while True:
            iv = interval_det(self.interval_basis(w, scaled=False))
            if iv.lo > 0 or iv.hi < 0:
                return
            if w < precision_floor():
                raise PrecisionExhausted("nonsingularity of the basis not certified")
            w = w * w

    # -- basic views ------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_rational(self) -> bool:
        return not self.scale and all(_is_rational(x) for r in self.basis for x in r)

    def is_rational_unscaled(self) -> bool:
        return all(_is_rational(x) for r in self.basis for x in r)

    def is_diagonal(self) -> bool:
        return all(self.basis[i][j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.basis)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.dim)]

    def row_group(self, i: int) -> ScaleGroup | None:
        return self._row_group.get(i)

    def covol_sq_total(self) -> Fraction:
        c = Fraction(1)
        for g in self.scale:
            c *= g.covol_sq
        return c

    def det_sq(self) -> Fraction | None:
        """Exact squared determinant of the unscaled basis, when known."""
        return self._det_sq

    def covolume_interval(self, width=Fraction(1, 2**40)) -> RealInterval:
        """Certified interval for the covolume after scaling."""
        if self._det_sq is not None:
            q = self._det_sq / self.covol_sq_total()
            r = exact_root(q, 2)
            if r is not None:
                return RealInterval.point(r)
            lo, hi = root_bounds(q, 2, max(8, (1 / Fraction(width)).numerator.bit_length() + 2))
            return RealInterval(lo, hi)
        det = abs(interval_det(self.interval_basis(Fraction(width) / 2**16, scaled=True)))
        return det

    def is_unimodular(self) -> bool:
        if self._det_sq is not None:
            return self._det_sq == self.covol_sq_total()
        iv = self.covolume_interval()
        return 1 in iv

    # -- scaled coordinates ----------------------------------------------

    def scaled_interval(self, i: int, x, width=Fraction(1, 2**40)) -> RealInterval:
        iv = interval_of(x, width)
        g = self._row_group.get(i)
        if g is None:
            return iv
        bits = max(16, (1 / Fraction(width)).numerator.bit_length() + 8)
        lo, hi = g.factor_bounds(bits)
        return iv * RealInterval(lo, hi)

    def coord_within(self, i: int, x, radius: Fraction) -> bool:
        """Exact test |c_i * x| <= radius for a coordinate value x in row i."""
        g = self._row_group.get(i)
        if g is None:
            return abs(x) <= radius
        k = len(g.rows)
        return x ** (2 * k) <= radius ** (2 * k) * g.covol_sq

    def interval_basis(self, width=Fraction(1, 2**40), scaled=True) -> list[list[RealInterval]]:
        out = []
        for i, r in enumerate(self.basis):
            if scaled:
                out.append([self.scaled_interval(i, x, width) for x in r])
            else:
                out.append([interval_of(x, width) for x in r])
        return out

    def matvec(self, m: Sequence) -> tuple:
        """Unscaled B*m for a coefficient vector (integers, rationals or scalars)."""
        out = []
        for r in self.basis:
            acc = Fraction(0)
            for x, c in zip(r, m):
                if c == 0 or (isinstance(x, Fraction) and x == 0):
                    continue
                acc = acc + x * c
            out.append(acc)
        return tuple(out)

    # -- transformations ------------------------------------------------

    def scale_rows(self, entries: Sequence) -> Lattice:
        """Multiply row i of the basis by entries[i] (diagonal action)."""
        if len(entries) != self.dim:
            raise ValueError(f"dimension mismatch: {len(entries)} entries for a {self.dim}-dimensional lattice")
        rows = [[x * e if x != 0 else x for x in r] for r, e in zip(self.basis, entries)]
        return Lattice(rows, self.scale, self.field_type, det_sq=self._det_and_scale_after(entries), check=False)

    def _det_and_scale_after(self, entries):
        if self._det_sq is None:
            return None
        prod = product_form(entries)
        if isinstance(prod, Fraction):
            return self._det_sq * prod**2
        return None

    def normalized(self) -> Lattice:
        """Attach a scale group over all rows so the covolume becomes 1."""
        if self.scale:
            raise ValueError("lattice already carries a scale")
        ds = self._det_sq
        if ds is None:
            raise ValueError("exact determinant unknown; cannot normalize symbolically")
        return Lattice(self.basis, (ScaleGroup(tuple(range(self.dim)), ds),), self.field_type, det_sq=ds, check=False)

    def with_field_type(self, flag) -> Lattice:
        return Lattice(self.basis, self.scale, flag, det_sq=self._det_sq, check=False)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return same_lattice(self, other) is not None

    def __hash__(self):
        raise TypeError("Lattice is unhashable; compare with same_lattice")

    def __repr__(self):
        return f"Lattice(dim={self.dim}, basis={[list(r) for r in self.basis]}, scale={list(self.scale)})"


def interval_det(m: list[list[RealInterval]]) -> RealInterval:
    """Interval determinant by cofactor expansion (exact for point intervals)."""
    n = len(m)
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    acc = RealInterval.point(0)
    for j in range(n):
        if m[0][j].is_point() and m[0][j].lo == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * interval_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def identity_lattice(d: int) -> Lattice:
    return Lattice(LA.identity(d))


# -- exact change-of-basis solving ------------------------------------------

def _row_equations(row: Sequence, rhs) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Rational equations equivalent to sum_k row[k]*m_k = rhs (m rational)."""
    K: NumberField | None = None
    idx = None
    for x in list(row) + [rhs]:
        if isinstance(x, Embedded):
            if K is None:
                K, idx = x.field, x.index
            elif x.key() != (K, idx):
                raise MixedFieldError("mixed algebraic fields in one row are not supported")
    if K is None:
        return [[Fraction(x) for x in row]], [Fraction(rhs)]
    coords = [field_coords(x, K) for x in row]
    rc = field_coords(rhs, K)
    eqs = [[c[t] for c in coords] for t in range(K.degree)]
    return eqs, list(rc)


def solve_rational_coords(basis: Sequence[Sequence], targets: Sequence[Sequence]) -> list[list[Fraction]] | None:
    """Rational matrix M with basis*M = targets (columns of targets), or None.

    Each coordinate row is split into rational equations in field coordinates,
    so this is exact for rows whose entries live in one embedded field.
    """
    d = len(basis)
    k = len(targets[0])
    eqs, rhs = [], []
    for i in range(d):
        block_rows = None
        block_rhs = []
        for j in range(k):
            e, r = _row_equations(basis[i], targets[i][j])
            block_rows = e
            block_rhs.append(r)
        eqs.extend(block_rows)
        for t in range(len(block_rows)):
            rhs.append([block_rhs[j][t] for j in range(k)])
    return LA.solve(eqs, rhs)


def same_lattice(a: Lattice, b: Lattice) -> list[list[int]] | None:
    """Integer unimodular M with B_b*M = B_a (so both span one lattice), else None."""
    if a.dim != b.dim or a.scale != b.scale:
        return None
    try:
        m = solve_rational_coords(b.basis, a.basis)
    except MixedFieldError:
        return None
    if m is None or not LA.is_integral(m):
        return None
    mi = LA.to_int(m)
    if abs(LA.bareiss_det(mi)) != 1:
        return None
    return mi


# -- grids ---------------------------------------------------------------

def _frac_part(x):
    return x - x.__floor__()


@dataclass(frozen=True)
class Grid:
    """y = x + v with v = B t and basis coordinates t reduced into [0, 1)."""

    lattice: Lattice
    t: tuple = field(default=())

    def __post_init__(self):
        t = self.t or tuple(Fraction(0) for _ in range(self.lattice.dim))
        if len(t) != self.lattice.dim:
            raise ValueError("translation has the wrong dimension")
        object.__setattr__(self, "t", tuple(_frac_part(as_scalar(c)) for c in t))

    @classmethod
    def from_vector(cls, lattice: Lattice, v: Sequence) -> Grid:
        v = [as_scalar(x) for x in v]
        if lattice.is_rational_unscaled():
            inv = LA.inverse(lattice.basis)
            t = []
            for r in inv:
                acc = Fraction(0)
                for c, x in zip(r, v):
                    if c:
                        acc = acc + c * x
                t.append(acc)
            return cls(lattice, tuple(t))
        m = solve_rational_coords(lattice.basis, [[x] for x in v])
        if m is None:
            raise ValueError("translation is not in the rational span of the basis; pass basis coordinates")
        return cls(lattice, tuple(r[0] for r in m))

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def vector(self) -> tuple:
        return self.lattice.matvec(self.t)

    def is_rational(self) -> bool:
        return all(isinstance(c, Fraction) for c in self.t)

    def __repr__(self):
        return f"Grid({self.lattice!r}, t={list(self.t)})"


def scale_grid(y: Grid, n: int) -> Grid:
    if n == 0:
        raise ValueError("n must be nonzero")
    return Grid(y.lattice, tuple(n * c for c in y.t))


def tau_embed(y: Grid) -> Lattice:
    """(d+1)-dimensional lattice with basis [[B, v], [0, 1]]."""
    x = y.lattice
    d = x.dim
    v = y.vector
    rows = [list(x.basis[i]) + [v[i]] for i in range(d)]
    rows.append([Fraction(0)] * d + [Fraction(1)])
    return Lattice(rows, x.scale, x.field_type, det_sq=x.det_sq(), check=False)


def direct_sum(a: Lattice, b: Lattice) -> Lattice:
    da, db = a.dim, b.dim
    rows = [list(r) + [Fraction(0)] * db for r in a.basis]
    rows += [[Fraction(0)] * da + list(r) for r in b.basis]
    groups = list(a.scale) + [ScaleGroup(tuple(i + da for i in g.rows), g.covol_sq) for g in b.scale]
    ds = a.det_sq() * b.det_sq() if a.det_sq() is not None and b.det_sq() is not None else None
    return Lattice(rows, groups, None, det_sq=ds, check=False)


def grid_equal(y1: Grid, y2: Grid) -> bool:
    """Exact equality of grids: same lattice and translations congruent mod it."""
    m = same_lattice(y1.lattice, y2.lattice)
    if m is None:
        return False
    # v1 = B1 t1 = B2 M t1, so need M t1 - t2 in Z^d
    for i in range(len(m)):
        acc = Fraction(0)
        for c, x in zip(m[i], y1.t):
            if c:
                acc = acc + c * x
        diff = acc - y2.t[i]
        if not isinstance(diff, Fraction) or diff.denominator != 1:
            return False
    return True


def contains(y: Grid | Lattice, u: Sequence) -> tuple[int, ...] | None:
    """Integer coefficients m with u = B(m + t), or None if u is not in y."""
    lat = y.lattice if isinstance(y, Grid) else y
    t = y.t if isinstance(y, Grid) else tuple(Fraction(0) for _ in range(lat.dim))
    v = lat.matvec(t)
    diff = [as_scalar(a) - b for a, b in zip(u, v)]
    try:
        m = solve_rational_coords(lat.basis, [[x] for x in diff])
    except MixedFieldError:
        return None
    if m is None or any(r[0].denominator != 1 for r in m):
        return None
    return tuple(int(r[0]) for r in m)
