"""Direct evaluation of n<n alpha><n beta> for the classical Littlewood problem.

Rational inputs are exact. Irrational inputs are turned into integer
fixed-point enclosures A / 2^P <= alpha <= (A + 1) / 2^P once, after which
every n costs a few big-integer operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact.algebraic import AlgebraicReal
from ..exact.interval import RealInterval
from ..exact.numfield import Embedded, interval_of
from ..exact.rational import format_rational, to_fraction


@dataclass(frozen=True)
class ScanRecord:
    n: int
    value: Fraction | RealInterval
    is_record: bool
    flagged: bool = False

    @property
    def lo(self) -> Fraction:
        return self.value if isinstance(self.value, Fraction) else self.value.lo

    @property
    def hi(self) -> Fraction:
        return self.value if isinstance(self.value, Fraction) else self.value.hi

    def csv_row(self) -> tuple:
        return (self.n, format_rational(self.lo), format_rational(self.hi), int(self.is_record))


def dist_to_int(q: Fraction) -> Fraction:
    """<q> = min over integers m of |q - m|."""
    f = q - (q.numerator // q.denominator)
    return min(f, 1 - f)


def _fixed_point(x, bits: int) -> tuple[int, int] | Fraction:
    """Integers (A, A + 1) with A / 2^bits <= x <= (A + 1) / 2^bits, or x itself if rational."""
    if isinstance(x, (int, Fraction, str)):
        return to_fraction(x)
    width = Fraction(1, 2 ** (bits + 2))
    if isinstance(x, AlgebraicReal):
        if x.is_rational():
            return x.rational_value()
        iv = x.refine(width)
    elif isinstance(x, Embedded):
        iv = interval_of(x, width)
    elif isinstance(x, RealInterval):
        iv = x
    else:
        raise TypeError(f"unsupported scan input {type(x).__name__}")
    scale = 2**bits
    lo = (iv.lo * scale).__floor__()
    hi = -((-iv.hi * scale).__floor__())
    return lo, hi


def _dist_interval(lo: int, hi: int, scale: int) -> tuple[int, int, bool]:
    """Enclosure (numerators over scale) of <x> for x in [lo, hi] / scale.

    Flagged when the enclosure touches an integer, where the sign of the
    distance cannot be certified.
    """
    k = lo // scale
    a, b = lo - k * scale, hi - k * scale  # x - k in [a, b] / scale, 0 <= a < scale
    half = scale // 2
    if b >= scale:
        # interval crosses the integer k + 1
        return 0, half, True
    da, db = min(a, scale - a), min(b, scale - b)
    if a <= half <= b:
        return min(da, db), half, False
    return min(da, db), max(da, db), a == 0


def classical_littlewood_scan(alpha, beta, n_max: int, bits: int = 128) -> list[ScanRecord]:
    """Rows n = 1..n_max with running-minimum flags."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    fa, fb = _fixed_point(alpha, bits), _fixed_point(beta, bits)
    rows: list[ScanRecord] = []
    best = None
    scale = 2**bits
    exact = isinstance(fa, Fraction) and isinstance(fb, Fraction)
    for n in range(1, n_max + 1):
        if exact:
            val = n * dist_to_int(n * fa) * dist_to_int(n * fb)
            rec = best is None or val < best
            if rec:
                best = val
            rows.append(ScanRecord(n, val, rec))
            continue
        parts = []
        flag = False
        for f in (fa, fb):
            if isinstance(f, Fraction):
                dq = dist_to_int(n * f)
                parts.append((dq, dq))
            else:
                lo, hi, fl = _dist_interval(n * f[0], n * f[1], scale)
                flag = flag or fl
                parts.append((Fraction(lo, scale), Fraction(hi, scale)))
        if any(p == (0, 0) for p in parts):
            # an exactly vanishing rational factor makes the row exact
            rec = best is None or (isinstance(best, RealInterval) and best.lo > 0)
            if rec:
                best = RealInterval.point(0)
            rows.append(ScanRecord(n, Fraction(0), rec, flag))
            continue
        val = RealInterval(n * parts[0][0] * parts[1][0], n * parts[0][1] * parts[1][1])
        rec = best is None or val.mid < best.mid
        if rec:
            flag = flag or (best is not None and val.hi >= best.lo)
            best = val
        rows.append(ScanRecord(n, val, rec, flag))
    return rows


def records(rows: list[ScanRecord]) -> list[ScanRecord]:
    return [r for r in rows if r.is_record]


def first_zero(rows: list[ScanRecord]) -> int | None:
    for r in rows:
        if isinstance(r.value, Fraction) and r.value == 0:
            return r.n
    return None
