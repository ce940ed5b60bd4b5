"""Closed intervals with rational endpoints.

Every operation is outward-conservative: the exact result for any members of
the operands lies in the returned interval. Rational inputs stay exact under
``+``, ``-`` and ``*`` (point intervals map to point intervals).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .rational import RationalLike, format_rational, to_fraction


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO_OR_UNKNOWN = 0
    POSITIVE = 1


class PrecisionExhausted(ArithmeticError):
    """Refinement hit the hard width floor without deciding."""


#: default hard floor for refinement loops
HARD_FLOOR = Fraction(1, 2**256)
_floor = [HARD_FLOOR]


def precision_floor() -> Fraction:
    """Width below which refinement loops give up (process-wide)."""
    return _floor[0]


def set_precision_floor(width) -> None:
    width = Fraction(width)
    if width <= 0:
        raise ValueError("precision floor must be positive")
    _floor[0] = width


@dataclass(frozen=True, slots=True)
class RealInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if not isinstance(self.lo, Fraction) or not isinstance(self.hi, Fraction):
            object.__setattr__(self, "lo", to_fraction(self.lo))
            object.__setattr__(self, "hi", to_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, q: RationalLike) -> RealInterval:
        q = to_fraction(q)
        return cls(q, q)

    @classmethod
    def coerce(cls, x) -> RealInterval:
        if isinstance(x, RealInterval):
            return x
        return cls.point(x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, q) -> bool:
        if isinstance(q, RealInterval):
            return self.lo <= q.lo and q.hi <= self.hi
        q = to_fraction(q)
        return self.lo <= q <= self.hi

    def overlaps(self, other: RealInterval) -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: RealInterval) -> RealInterval:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError("disjoint intervals")
        return RealInterval(lo, hi)

    def hull(self, other: RealInterval) -> RealInterval:
        return RealInterval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __neg__(self) -> RealInterval:
        return RealInterval(-self.hi, -self.lo)

    def __add__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return RealInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return RealInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.lo == o.hi:
            c = o.lo
            return RealInterval(self.lo * c, self.hi * c) if c >= 0 else RealInterval(self.hi * c, self.lo * c)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RealInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def __truediv__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self * o.reciprocal()

    def __rtruediv__(self, other) -> RealInterval:
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return o * self.reciprocal()

    def reciprocal(self) -> RealInterval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval {self} contains 0")
        return RealInterval(1 / self.hi, 1 / self.lo)

    def __abs__(self) -> RealInterval:
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RealInterval(Fraction(0), max(-self.lo, self.hi))

    def __pow__(self, n: int) -> RealInterval:
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return RealInterval.point(1)
        if n % 2 == 1 or self.lo >= 0:
            a, b = self.lo**n, self.hi**n
            return RealInterval(min(a, b), max(a, b))
        a = abs(self)
        return RealInterval(a.lo**n, a.hi**n)

    def round_outward(self, bits: int) -> RealInterval:
        """Widen to dyadic endpoints with denominator ``2**bits``."""
        s = 1 << bits
        lo = Fraction((self.lo * s).__floor__(), s)
        hi = Fraction((self.hi * s).__ceil__(), s)
        return RealInterval(lo, hi)

    def log(self, bits: int = 64) -> RealInterval:
        """Conservative natural logarithm of a positive interval."""
        if self.lo <= 0:
            raise ValueError(f"log of non-positive interval {self}")
        return RealInterval(log_bounds(self.lo, bits).lo, log_bounds(self.hi, bits).hi)

    def __float__(self) -> float:
        return float(self.mid)

    def to_json(self) -> list[str]:
        return [format_rational(self.lo), format_rational(self.hi)]

    def __repr__(self) -> str:
        if self.lo == self.hi:
            return f"[{format_rational(self.lo)}]"
        return f"[{float(self.lo):.6g}, {float(self.hi):.6g}]"


def _coerce(x):
    if isinstance(x, RealInterval):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RealInterval.point(x)
    return NotImplemented


def certified_sign(x: RealInterval) -> Sign:
    if x.lo > 0:
        return Sign.POSITIVE
    if x.hi < 0:
        return Sign.NEGATIVE
    return Sign.ZERO_OR_UNKNOWN


def interval_arith(op: str, a: RealInterval, b: RealInterval) -> RealInterval:
    a, b = RealInterval.coerce(a), RealInterval.coerce(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def refine_until_decided(evaluate, start_width: Fraction = Fraction(1, 2**16), floor: Fraction | None = None) -> Sign:
    """Call ``evaluate(width)`` with shrinking widths until its sign is certified.

    Returns ZERO_OR_UNKNOWN once the width passes ``floor``; callers must
    handle that case explicitly.
    """
    floor = precision_floor() if floor is None else floor
    w = start_width
    while True:
        s = certified_sign(evaluate(w))
        if s is not Sign.ZERO_OR_UNKNOWN:
            return s
        if w < floor:
            return Sign.ZERO_OR_UNKNOWN
        w = w * w if w < Fraction(1, 2**32) else w / 2**32


# -- logarithms ------------------------------------------------------------

def _atanh_bounds(z: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    # atanh(z) = sum z^(2j+1)/(2j+1); |z| < 1/2 assumed.
    # Tail after the term j=K is at most |z|^(2K+3) / ((2K+3)(1-z^2)).
    az = abs(z)
    target = Fraction(1, 2 ** (bits + 4))
    total = Fraction(0)
    term = z
    z2 = z * z
    j = 0
    while True:
        total += term / (2 * j + 1)
        j += 1
        term *= z2
        tail = az ** (2 * j + 1) / ((2 * j + 1) * (1 - z2))
        if tail < target:
            break
    return total - tail, total + tail


_LOG2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}


def _log2_bounds(bits: int) -> tuple[Fraction, Fraction]:
    if bits not in _LOG2_CACHE:
        lo, hi = _atanh_bounds(Fraction(1, 3), bits + 8)
        _LOG2_CACHE[bits] = (2 * lo, 2 * hi)
    return _LOG2_CACHE[bits]


def log_bounds(q: RationalLike, bits: int = 64) -> RealInterval:
    """Rigorous rational enclosure of ``log(q)`` of width about ``2**-bits``."""
    q = to_fraction(q)
    if q <= 0:
        raise ValueError("log of non-positive number")
    if q == 1:
        return RealInterval.point(0)
    # q = 2^k * y with y in [2/3, 4/3]
    k = q.numerator.bit_length() - q.denominator.bit_length()
    y = q / Fraction(2) ** k
    while y > Fraction(4, 3):
        y /= 2
        k += 1
    while y < Fraction(2, 3):
        y *= 2
        k -= 1
    extra = max(abs(k).bit_length(), 1)
    z = (y - 1) / (y + 1)
    alo, ahi = _atanh_bounds(z, bits + 2)
    llo, lhi = _log2_bounds(bits + extra + 2)
    if k >= 0:
        lo, hi = k * llo + 2 * alo, k * lhi + 2 * ahi
    else:
        lo, hi = k * lhi + 2 * alo, k * llo + 2 * ahi
    return RealInterval(lo, hi).round_outward(bits + 4)
