"""The embedded lattice x_Lambda, units as diagonal elements, fixed grids and
FL certificates for rational grids."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ..dynamics import ConsistencyError, DiagonalElement, PreconditionError, apply_diag, stabilizer_check
from ..exact.interval import RealInterval
from ..exact.numfield import FieldElement, NumberField, embedded, product_form
from ..exact.rational import format_rational
from ..lattice.core import Grid, Lattice, ScaleGroup, contains, grid_equal, interval_det, scale_grid
from .klattice import KLattice
from .units import UnitRecord, verify_unit


def require_totally_real(K: NumberField):
    if not K.totally_real:
        raise PreconditionError(
            f"{K!r} has {len(K.roots)} real roots out of {K.degree}; lattice constructions need a totally real field"
        )


def build_lattice(lam: KLattice, K: NumberField | None = None) -> Lattice:
    """x_Lambda: columns phi(b_1..b_d), scaled to covolume one."""
    K = K or lam.field
    if K != lam.field:
        raise ValueError("lattice lives in another field")
    require_totally_real(K)
    d = K.degree
    basis = [[embedded(b, i) for b in lam.basis] for i in range(d)]
    # det(phi(b))^2 = det(Tr(b_i b_j))
    covol_sq = abs(lam.trace_form_det())
    iv = interval_det([[RealInterval.coerce(x) if isinstance(x, Fraction) else x.interval(Fraction(1, 2**64)) for x in r] for r in basis])
    if not (covol_sq in iv * iv):
        raise ConsistencyError("trace-form determinant disagrees with the embedding determinant")
    if lam.same_as(KLattice.power_basis(K)) and covol_sq != abs(K.discriminant()):
        raise ConsistencyError("covolume square of Z[alpha] differs from |disc f|")
    return Lattice(basis, [ScaleGroup(tuple(range(d)), covol_sq)], field_type=K, det_sq=covol_sq)


def unit_to_diag(rec: UnitRecord | FieldElement, lam: KLattice | None = None) -> DiagonalElement:
    """diag(sigma_1(w), ..., sigma_d(w)) for a totally positive unit w."""
    if isinstance(rec, FieldElement):
        if lam is None:
            raise ValueError("pass the lattice to verify a bare field element")
        rec = verify_unit(rec, lam)
    if not rec.ok:
        raise PreconditionError(f"not a unit of the lattice: {rec.failure}")
    if rec.totally_positive is not True:
        raise PreconditionError(f"{rec.omega!r} is not certified totally positive")
    w = rec.omega
    return DiagonalElement([embedded(w, i) for i in range(w.field.degree)])


@dataclass
class StabilizerCertificate:
    status: str
    M: list | None
    matches_unit: bool


def unit_stabilizer(rec: UnitRecord, lam: KLattice, x: Lattice | None = None) -> StabilizerCertificate:
    """stabilizer_check on x_Lambda; a a B = B M where M is the unit's matrix."""
    x = x or build_lattice(lam)
    res = stabilizer_check(unit_to_diag(rec), x)
    match = res.M is not None and [list(map(int, r)) for r in res.M] == [list(map(int, r)) for r in rec.M]
    return StabilizerCertificate(res.status, res.M, match)


# -- fixed grids -------------------------------------------------------------

@dataclass
class FixedGrid:
    grid: Grid
    eta: FieldElement  # theta / (omega - 1)
    denominator: int  # lcm of the denominators of the basis coordinates
    norm_bound: int  # |N(omega - 1)|, a multiple of the denominator
    fixed: bool


def fixed_grid_solve(rec: UnitRecord, theta: FieldElement, lam: KLattice, x: Lattice | None = None) -> FixedGrid:
    """y = x_Lambda + c*phi(theta/(omega - 1)), verified fixed by the unit."""
    w = rec.omega
    if w == w.field.one:
        raise PreconditionError("omega = 1: omega - 1 is not invertible")
    x = x or build_lattice(lam)
    eta = theta * (w - 1).inverse()
    t = lam.coords_of(eta)
    y = Grid(x, t)
    a = unit_to_diag(rec)
    fixed = grid_equal(apply_diag(a, y), y)
    if not fixed:
        raise ConsistencyError("constructed grid is not fixed by the unit")
    den = math.lcm(*(c.denominator for c in y.t))
    nb = abs((w - 1).norm())
    if theta == theta.field.zero or lam.contains(theta):
        if nb.denominator != 1 or int(nb) % den != 0:
            raise ConsistencyError("denominator of the fixed grid does not divide |N(omega - 1)|")
    return FixedGrid(y, eta, den, int(nb) if nb.denominator == 1 else 0, fixed)


# -- FL certificates ---------------------------------------------------------

@dataclass
class FLCertificate:
    grid: Grid
    n: int
    m: tuple  # integer coefficients with B(m + n t) = 0
    minimality: str  # "claimed" | "unclaimed"

    def verify(self) -> bool:
        if self.n < 1 or len(self.m) != self.grid.dim:
            return False
        if any(not isinstance(c, Fraction) for c in self.grid.t):
            return False
        # w = B(m + n t) is a vector of n*y; it must be exactly 0
        w = self.grid.lattice.matvec([mi + self.n * ti for mi, ti in zip(self.m, self.grid.t)])
        if any(c != 0 for c in w):
            return False
        if contains(scale_grid(self.grid, self.n), w) is None:
            return False
        return product_form(w) == 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": list(self.m),
            "t": [format_rational(c) for c in self.grid.t],
            "minimality": self.minimality,
        }


def rational_grid_fl_certificate(y: Grid) -> FLCertificate:
    """Torsion order n of the translation, with 0 in n*y checked exactly."""
    if not y.is_rational():
        raise PreconditionError("translation has irrational basis coordinates; no torsion certificate exists")
    n = math.lcm(*(c.denominator for c in y.t)) if y.t else 1
    m = tuple(-int(n * c) for c in y.t)
    # field embeddings vanish only at 0, so N(n y) = 0 forces 0 in n y
    minimality = "claimed" if y.lattice.field_type is not None else "unclaimed"
    cert = FLCertificate(y, n, m, minimality)
    if not cert.verify():
        raise ConsistencyError("FL certificate failed exact re-verification")
    return cert
