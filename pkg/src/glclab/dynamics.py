"""Diagonal group actions, cone flows on tau-embedded grids, and stabilizers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact.interval import PrecisionExhausted, RealInterval
from .exact.numfield import Embedded, as_scalar, interval_of, product_form, sign
from .exact.rational import to_fraction
from .lattice.core import Grid, Lattice, same_lattice, tau_embed
from .lattice.enumerate import shortest_vector


class PreconditionError(ValueError):
    pass


class ConsistencyError(AssertionError):
    pass


class DiagonalElement:
    """Positive diagonal matrix with determinant exactly one."""

    __slots__ = ("entries", "log_coords", "base")

    def __init__(self, entries: Sequence, log_coords=None, base=None):
        entries = tuple(as_scalar(e) for e in entries)
        for e in entries:
            if sign(e) <= 0:
                raise ValueError("diagonal entries must be positive")
        det = product_form(entries)
        if not (isinstance(det, Fraction) and det == 1):
            raise ValueError(f"determinant is {det}, not 1")
        self.entries = entries
        self.log_coords = log_coords
        self.base = base

    @classmethod
    def from_log(cls, t: Sequence, base=2) -> DiagonalElement:
        """Entries base**t_i; t_i must be integers summing to 0."""
        t = tuple(to_fraction(x) for x in t)
        base = to_fraction(base)
        if sum(t) != 0:
            raise ValueError("log coordinates must sum to 0")
        if any(x.denominator != 1 for x in t):
            raise ValueError("log coordinates must be integers so that entries stay rational")
        return cls([base ** int(x) for x in t], log_coords=t, base=base)

    @classmethod
    def identity(cls, d: int) -> DiagonalElement:
        return cls([Fraction(1)] * d, log_coords=tuple(Fraction(0) for _ in range(d)), base=Fraction(2))

    @property
    def dim(self) -> int:
        return len(self.entries)

    def inverse(self) -> DiagonalElement:
        logs = tuple(-x for x in self.log_coords) if self.log_coords is not None else None
        return DiagonalElement([1 / e for e in self.entries], logs, self.base)

    def __mul__(self, other: DiagonalElement) -> DiagonalElement:
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        logs = None
        if self.log_coords is not None and other.log_coords is not None and self.base == other.base:
            logs = tuple(a + b for a, b in zip(self.log_coords, other.log_coords))
        return DiagonalElement([a * b for a, b in zip(self.entries, other.entries)], logs, self.base)

    def extend(self) -> DiagonalElement:
        """a (+) 1 acting on R^{d+1}."""
        logs = self.log_coords + (Fraction(0),) if self.log_coords is not None else None
        return DiagonalElement(self.entries + (Fraction(1),), logs, self.base)

    def in_cone(self) -> bool:
        """First d entries > 1 (positive log coordinates) for a (d+1)-dim element."""
        return all(e > 1 for e in self.entries[:-1])

    def __eq__(self, other):
        return isinstance(other, DiagonalElement) and all(a == b for a, b in zip(self.entries, other.entries)) and self.dim == other.dim

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"DiagonalElement({list(self.entries)})"


def apply_diag(a: DiagonalElement, x: Lattice | Grid):
    if isinstance(x, Grid):
        if a.dim != x.dim:
            raise ValueError(f"dimension mismatch: element of size {a.dim}, grid of dimension {x.dim}")
        # v = B t, so a v = (a B) t and the basis coordinates are unchanged
        return Grid(x.lattice.scale_rows(a.entries), x.t)
    if a.dim != x.dim:
        raise ValueError(f"dimension mismatch: element of size {a.dim}, lattice of dimension {x.dim}")
    return x.scale_rows(a.entries)


@dataclass
class StabilizerResult:
    status: str  # "yes" | "no" | "unknown"
    M: list | None = None


def stabilizer_check(a: DiagonalElement, x: Lattice) -> StabilizerResult:
    """Yes iff a*B = B*M with M integral and det M = +-1."""
    try:
        m = same_lattice(apply_diag(a, x), x)
    except PrecisionExhausted:
        return StabilizerResult("unknown")
    if m is None:
        return StabilizerResult("no")
    return StabilizerResult("yes", m)


# -- cone flows ------------------------------------------------------------------

def central_ray(d: int) -> tuple:
    """(1, ..., 1, -d) in dimension d+1."""
    return tuple([Fraction(1)] * d + [Fraction(-d)])


def check_ray(direction: Sequence) -> tuple:
    t = tuple(to_fraction(x) for x in direction)
    if len(t) < 2:
        raise ValueError("ray must have at least two entries")
    if any(x <= 0 for x in t[:-1]):
        raise ValueError("ray entries t_1..t_d must be strictly positive")
    if sum(t) != 0:
        raise ValueError("ray entries must sum to 0 (t_{d+1} = -sum t_i)")
    return t


@dataclass
class Sample:
    time: Fraction
    systole: RealInterval
    coeffs: tuple  # coefficients of the short vector in the tau basis
    flagged: bool = False


@dataclass
class Trajectory:
    grid: Grid
    direction: tuple
    base: Fraction
    samples: list = field(default_factory=list)

    @property
    def times(self) -> list:
        return [s.time for s in self.samples]


def flow_element(direction, s: Fraction, base=Fraction(2)) -> DiagonalElement:
    return DiagonalElement.from_log([s * t for t in direction], base)


def cone_ray_flow(y: Grid, direction: Sequence, t_max, steps: int, base=2) -> Trajectory:
    """Systoles of a_s tau(y) at s_k = k*t_max/steps, k = 0..steps."""
    t = check_ray(direction)
    if len(t) != y.dim + 1:
        raise ValueError("ray length must be d+1")
    t_max = to_fraction(t_max)
    base = to_fraction(base)
    if steps < 1 or t_max <= 0:
        raise ValueError("need steps >= 1 and t_max > 0")
    tau = tau_embed(y)
    traj = Trajectory(y, t, base)
    for k in range(steps + 1):
        s = t_max * k / steps
        if any((s * ti).denominator != 1 for ti in t):
            raise ValueError(f"sample time {s} does not give integer exponents; choose t_max/steps accordingly")
        a = flow_element(t, s, base)
        try:
            sv = shortest_vector(apply_diag(a, tau))
            traj.samples.append(Sample(s, sv.length, tuple(sv.coeffs), sv.tie_flag))
        except PrecisionExhausted:
            traj.samples.append(Sample(s, RealInterval(Fraction(0), Fraction(10**9)), (), True))
    return traj


@dataclass
class OrbitWitness:
    grid: Grid
    time: Fraction
    eps: Fraction
    coeffs: tuple  # tau-basis coefficients (m, n)
    w: tuple  # unscaled coordinates of w in tau(y)
    bound: object  # |N(w)| unscaled
    covol_sq: Fraction

    @property
    def n(self):
        return self.w[-1]

    def verify(self) -> bool:
        tau = tau_embed(self.grid)
        w = tau.matvec(self.coeffs)
        if tuple(w) != tuple(self.w) or w[-1] == 0:
            return False
        val = abs(product_form(w))
        if val != self.bound:
            return False
        return _below(val, self.eps, len(w), self.covol_sq)


def _below(val, eps: Fraction, k: int, covol_sq: Fraction) -> bool:
    """|N| / sqrt(covol_sq) < eps^k, exactly."""
    rhs = eps ** (2 * k) * covol_sq
    if isinstance(val, (Fraction, Embedded)):
        return val * val < rhs
    # products over several fields: certified by intervals, undecided counts as no
    sq = interval_of(val, Fraction(1, 2**128)) ** 2
    return sq.hi < rhs


def systole_of(x: Lattice) -> RealInterval:
    return shortest_vector(x).length


def unboundedness_report(traj: Trajectory, eps) -> list[OrbitWitness]:
    """Witnesses |N(w)| < eps^{d+1} from every sample whose systole is below eps."""
    eps = to_fraction(eps)
    ell = systole_of(traj.grid.lattice)
    if not eps < ell.lo:
        raise PreconditionError(f"eps = {eps} must be below the systole of the base lattice ({ell})")
    tau = tau_embed(traj.grid)
    out = []
    for smp in traj.samples:
        if smp.flagged or not smp.systole.hi < eps:
            continue
        coeffs = smp.coeffs
        w = tau.matvec(coeffs)
        if w[-1] < 0:
            coeffs = tuple(-c for c in coeffs)
            w = tau.matvec(coeffs)
        if w[-1] == 0:
            raise ConsistencyError(f"short vector at time {smp.time} has w_(d+1) = 0 although eps < systole")
        val = abs(product_form(w))
        rec = OrbitWitness(traj.grid, smp.time, eps, coeffs, tuple(w), val, tau.covol_sq_total())
        if not rec.verify():
            raise ConsistencyError("emitted witness does not re-verify")
        out.append(rec)
    return out


def threshold_schedule(traj: Trajectory, k_max: int) -> list[tuple[int, OrbitWitness | None]]:
    """For eps_k = 2^-k below the base systole, the first witness along the trajectory."""
    ell = systole_of(traj.grid.lattice)
    out = []
    for k in range(0, k_max + 1):
        eps = Fraction(1, 2**k)
        if not eps < ell.lo:
            continue
        recs = unboundedness_report(traj, eps)
        out.append((k, recs[0] if recs else None))
    return out
