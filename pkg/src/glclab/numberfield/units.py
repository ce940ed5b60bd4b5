"""Unit verification, bounded unit search and the ID-condition report."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..exact import linalg as LA
from ..exact.interval import PrecisionExhausted, RealInterval
from ..exact.numfield import FieldElement, NumberField, embedded
from ..exact.rational import common_denominator, format_rational
from ..lattice.core import interval_det
from .klattice import KLattice, order_of

LOG_WIDTH = Fraction(1, 2**80)


@dataclass
class UnitRecord:
    omega: FieldElement
    norm: Fraction
    M: list | None  # integer matrix of x -> omega*x in the lattice basis
    totally_positive: bool | None  # None: undecided or field not totally real
    ok: bool
    failure: str | None = None

    def verify(self, lam: KLattice) -> bool:
        return verify_unit(self.omega, lam) == self

    def to_json(self) -> dict:
        return {
            "omega": self.omega.to_json(),
            "norm": format_rational(self.norm),
            "M": None if self.M is None else [[int(x) for x in r] for r in self.M],
            "totally_positive": self.totally_positive,
            "ok": self.ok,
            "failure": self.failure,
        }


def _totally_positive(omega: FieldElement) -> bool | None:
    K = omega.field
    if not K.totally_real:
        return None
    try:
        return all(omega.sign_at(i) > 0 for i in range(K.degree))
    except PrecisionExhausted:
        return None


def verify_unit(omega: FieldElement, lam: KLattice) -> UnitRecord:
    """Norm in {1, -1}, omega*Lambda = Lambda, and the signs of all embeddings."""
    nrm = omega.norm()
    if nrm not in (1, -1):
        return UnitRecord(omega, nrm, None, None, False, f"norm {nrm} is not +-1")
    m = lam.mult_matrix(omega)
    if not LA.is_integral(m):
        return UnitRecord(omega, nrm, None, None, False, "omega does not map the lattice into itself")
    m = LA.to_int(m)
    dm = LA.det(m)
    if dm not in (1, -1):
        return UnitRecord(omega, nrm, m, None, False, f"det M = {dm} is not +-1")
    if dm != nrm:
        return UnitRecord(omega, nrm, m, None, False, "det M disagrees with the norm")
    return UnitRecord(omega, nrm, m, _totally_positive(omega), True)


# -- log embedding ------------------------------------------------------------

def log_vector(omega: FieldElement, width: Fraction = LOG_WIDTH) -> tuple:
    """Intervals around log|sigma_i(omega)|."""
    out = []
    for i in range(omega.field.degree):
        x = embedded(omega, i)
        if isinstance(x, Fraction):
            out.append(RealInterval.point(abs(x)).log(96) if x != 1 else RealInterval.point(0))
        else:
            out.append(abs(omega.embed(i, width)).log(96))
    return tuple(out)


def _certified_nonzero(iv: RealInterval) -> bool:
    return iv.lo > 0 or iv.hi < 0


def _has_nonzero_minor(rows: list) -> bool:
    r = len(rows)
    d = len(rows[0])
    for cols in itertools.combinations(range(d), r):
        if _certified_nonzero(interval_det([[row[c] for c in cols] for row in rows])):
            return True
    return False


def certified_rank(vectors: list) -> int:
    """Lower bound on the rank of a list of interval vectors (greedy nonzero minors)."""
    chosen = []
    for v in vectors:
        if len(chosen) == len(v):
            break
        if _has_nonzero_minor(chosen + [v]):
            chosen.append(v)
    return len(chosen)


@dataclass
class UnitSearch:
    height: int
    units: list  # UnitRecord, one per +-pair
    rank_lower: int  # certified by a nonzero minor of the log matrix
    rank_upper: int  # d - 1: log vectors of norm +-1 elements sum to zero

    def __iter__(self):
        return iter(self.units)

    def __len__(self):
        return len(self.units)

    def omegas(self) -> list:
        return [u.omega for u in self.units]


def _height_values(H: int, den: int) -> list[Fraction]:
    vals = {Fraction(p, q) for q in range(1, H + 1) if den % q == 0 for p in range(-H, H + 1)}
    return sorted(vals)


def _canonical_sign(omega: FieldElement) -> FieldElement:
    for c in omega.coords:
        if c:
            return omega if c > 0 else -omega
    return omega


def _search_block(args):
    lam, order, head, vals = args
    K = lam.field
    out = []
    for tail in itertools.product(vals, repeat=K.degree - 1):
        coords = (head,) + tail
        if not any(coords):
            continue
        omega = K.element(coords)
        if _canonical_sign(omega) is not omega:
            continue
        if not order.contains(omega):
            continue
        rec = verify_unit(omega, lam)
        if rec.ok:
            out.append(rec)
    return out


def find_units(lam: KLattice, height_bound: int, workers: int = 1) -> UnitSearch:
    """Units of the order of Lambda whose power-basis coordinates are p/q with |p|, q <= H."""
    if height_bound < 1:
        raise ValueError("height bound must be >= 1")
    od = order_of(lam)
    order = od.order
    # coordinates of order elements have denominators dividing this
    den = common_denominator(x for r in order.coordinate_matrix() for x in r)
    vals = _height_values(height_bound, den)
    blocks = [(lam, order, h, vals) for h in vals if h >= 0]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_search_block, blocks))
    else:
        parts = [_search_block(b) for b in blocks]
    units = [u for p in parts for u in p]
    d = lam.degree
    logs = [log_vector(u.omega) for u in units if u.omega.rational_value() is None]
    lower = certified_rank(logs) if logs else 0
    return UnitSearch(height_bound, units, lower, d - 1)


# -- ID conditions -------------------------------------------------------------

REDUCTION = (
    "cond1 via the real-embedding reduction: a^n has irreducible characteristic polynomial for all n "
    "iff no ratio sigma_i(w)/sigma_j(w) (i != j) is a root of unity; the only real roots of unity are "
    "+-1, so this is sigma_i(w) != +-sigma_j(w), decided exactly on algebraic numbers. "
    "cond2: sigma_i(w) = 1 for one i forces w = 1, so any w != 1 moves every coordinate. "
    "cond3: a nonvanishing 2x2 minor of (log sigma_i(w_j)) certifies multiplicative independence."
)


@dataclass
class IDReport:
    degree: int
    cond1: str  # "yes" | "no" | "unknown"
    cond2: str
    cond3: str
    cond1_witness: FieldElement | None = None
    cond3_pair: tuple | None = None
    per_unit_cond1: list = field(default_factory=list)
    degree_ok: bool = True
    notes: list = field(default_factory=list)
    reduction: str = REDUCTION

    @property
    def all_hold(self) -> bool:
        return self.cond1 == self.cond2 == self.cond3 == "yes"

    @property
    def gfl_claim(self) -> bool:
        return self.all_hold and self.degree_ok

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "cond1": self.cond1,
            "cond2": self.cond2,
            "cond3": self.cond3,
            "cond1_witness": None if self.cond1_witness is None else self.cond1_witness.to_json(),
            "cond3_pair": None if self.cond3_pair is None else [w.to_json() for w in self.cond3_pair],
            "per_unit_cond1": self.per_unit_cond1,
            "degree_ok": self.degree_ok,
            "gfl_claim": self.gfl_claim,
            "notes": self.notes,
            "reduction": self.reduction,
        }


def cond1_for(omega: FieldElement) -> str:
    """sigma_i(w) != +-sigma_j(w) for all i != j, decided exactly."""
    d = omega.field.degree
    if omega.is_rational():
        return "no" if d > 1 else "yes"
    emb = [embedded(omega, i) for i in range(d)]
    try:
        for i in range(d):
            for j in range(i + 1, d):
                if emb[i] == emb[j] or emb[i] == -emb[j]:
                    return "no"
    except PrecisionExhausted:
        return "unknown"
    return "yes"


def _omega(u) -> FieldElement:
    return u.omega if isinstance(u, UnitRecord) else u


def _exactly_dependent(a: FieldElement, b: FieldElement, bound: int = 6) -> bool:
    one = a.field.one
    for k in range(0, bound + 1):
        for m in range(-bound, bound + 1):
            if (k, m) == (0, 0) or (k == 0 and m < 0):
                continue
            x = (a**k if k else one) * (b**m if m >= 0 else b.inverse() ** (-m))
            if x == one or x == -one:
                return True
    return False


def cond3_for(a: FieldElement, b: FieldElement) -> str:
    la, lb = log_vector(a), log_vector(b)
    if _has_nonzero_minor([la, lb]):
        return "yes"
    if _exactly_dependent(a, b):
        return "no"
    return "unknown"


def id_conditions_check(units, K: NumberField) -> IDReport:
    if not K.totally_real:
        raise ValueError(f"{K!r} is not totally real")
    omegas = [_omega(u) for u in units]
    d = K.degree
    rep = IDReport(d, "no", "no", "no")
    if d < 3:
        rep.degree_ok = False
        rep.notes.append("degree d >= 3 is required for the root-ratio argument; GFL claim suppressed")
    for w in omegas:
        if _totally_positive(w) is not True:
            rep.notes.append(f"{w!r} is not certified totally positive, so it does not give an element of the diagonal group")
    # cond1
    statuses = []
    for w in omegas:
        s = cond1_for(w)
        statuses.append(s)
        rep.per_unit_cond1.append({"omega": w.to_json(), "status": s})
        if s == "yes" and rep.cond1_witness is None:
            rep.cond1_witness = w
    rep.cond1 = "yes" if "yes" in statuses else ("unknown" if "unknown" in statuses else "no")
    # cond2
    ok = all(any(embedded(w, i) != 1 for w in omegas) for i in range(d))
    rep.cond2 = "yes" if ok and omegas else "no"
    # cond3
    s3 = []
    for a, b in itertools.combinations(omegas, 2):
        s = cond3_for(a, b)
        s3.append(s)
        if s == "yes":
            rep.cond3_pair = (a, b)
            break
    rep.cond3 = "yes" if "yes" in s3 else ("unknown" if "unknown" in s3 else "no")
    return rep
