"""Real algebraic numbers as (squarefree integer polynomial, isolating interval)."""

from __future__ import annotations

import threading
from fractions import Fraction

from . import poly as P
from .interval import PrecisionExhausted, RealInterval, precision_floor
from .poly import IntegerPolynomial


class NotSquarefree(ValueError):
    pass


class AlgebraicReal:
    """A real root of ``poly`` pinned down by an isolating interval.

    The polynomial is squarefree (not necessarily irreducible). The cached
    interval only ever shrinks; a lock serializes refinement.
    """

    __slots__ = ("poly", "_q", "_seq", "_lo", "_hi", "_lock")

    def __init__(self, poly: IntegerPolynomial, interval: RealInterval, _seq=None):
        self.poly = poly
        self._q = poly.q()
        self._seq = _seq if _seq is not None else P.sturm_sequence(self._q)
        self._lo, self._hi = interval.lo, interval.hi
        self._lock = threading.Lock()
        if self._lo == self._hi:
            if P.evaluate(self._q, self._lo) != 0:
                raise ValueError("point interval is not a root")
        elif P.count_roots(self._seq, self._lo, self._hi) != 1 or P.evaluate(self._q, self._lo) == 0:
            raise ValueError("interval does not isolate exactly one root")

    @classmethod
    def rational(cls, q) -> AlgebraicReal:
        q = Fraction(q)
        return cls(IntegerPolynomial((-q.numerator, q.denominator)), RealInterval.point(q))

    def __getstate__(self):
        return (self.poly, self._lo, self._hi)

    def __setstate__(self, state):
        poly, lo, hi = state
        self.poly = poly
        self._q = poly.q()
        self._seq = P.sturm_sequence(self._q)
        self._lo, self._hi = lo, hi
        self._lock = threading.Lock()

    @property
    def interval(self) -> RealInterval:
        return RealInterval(self._lo, self._hi)

    def is_rational(self) -> bool:
        if self._lo == self._hi:
            return True
        return self.rational_value() is not None

    def rational_value(self) -> Fraction | None:
        if self._lo == self._hi:
            return self._lo
        # rational roots of the polynomial that lie inside the interval
        for r in rational_roots(self.poly):
            if self._lo < r <= self._hi:
                with self._lock:
                    self._lo = self._hi = r
                return r
        return None

    def refine(self, width: Fraction) -> RealInterval:
        """Bisect until the isolating interval has width <= ``width``."""
        width = Fraction(width)
        if width <= 0:
            raise ValueError("width must be positive")
        with self._lock:
            q = self._q
            lo, hi = self._lo, self._hi
            if lo != hi:
                s_hi = P.sign_at(q, hi)
                if s_hi == 0:
                    lo = hi
            while hi - lo > width:
                mid = (lo + hi) / 2
                s = P.sign_at(q, mid)
                if s == 0:
                    lo = hi = mid
                    break
                if s == s_hi:
                    hi = mid
                else:
                    lo = mid
            self._lo, self._hi = lo, hi
            return RealInterval(lo, hi)

    def sign(self) -> int:
        return compare_rational(self, Fraction(0))

    def __float__(self) -> float:
        return float(self.refine(Fraction(1, 2**60)).mid)

    def __repr__(self) -> str:
        return f"AlgebraicReal({self.poly!r} ~ {float(self):.12g})"

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraicReal):
            return algebraic_equal(self, other)
        if isinstance(other, (int, Fraction)):
            return compare_rational(self, Fraction(other)) == 0
        return NotImplemented

    def __hash__(self):
        raise TypeError("AlgebraicReal is unhashable")

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0


def rational_roots(f: IntegerPolynomial) -> list[Fraction]:
    """All rational roots, by the rational-root theorem."""
    c = list(f.coeffs)
    roots = []
    shift = 0
    while c and c[0] == 0:
        c.pop(0)
        shift += 1
    if shift:
        roots.append(Fraction(0))
    if len(c) <= 1:
        return roots
    a0, an = abs(c[0]), abs(c[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for s in (p, -p):
                r = Fraction(s, q)
                if r.denominator == q and P.evaluate(c, r) == 0 and r not in roots:
                    roots.append(r)
    return sorted(roots)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def isolate_real_roots(f: IntegerPolynomial) -> list[AlgebraicReal]:
    """All real roots of a squarefree polynomial, in increasing order."""
    q = f.q()
    if P.degree(q) < 1:
        return []
    if not f.is_squarefree():
        g = P.gcd(q, f.derivative())
        raise NotSquarefree(f"{f!r} is not squarefree: repeated factor {IntegerPolynomial.from_rational(g)!r}")
    seq = P.sturm_sequence(q)
    b = P.cauchy_bound(q)
    out: list[RealInterval] = []
    _bisect(q, seq, -b, b, P.count_roots(seq, -b, b), out)
    return [AlgebraicReal(f, iv, _seq=seq) for iv in out]


def _bisect(q, seq, lo: Fraction, hi: Fraction, n: int, out: list) -> None:
    # invariant: q(lo) != 0, exactly n roots in (lo, hi]
    if n == 0:
        return
    if n == 1:
        if P.sign_at(q, hi) == 0:
            out.append(RealInterval(hi, hi))
        else:
            out.append(RealInterval(lo, hi))
        return
    mid = (lo + hi) / 2
    if P.sign_at(q, mid) == 0:
        # step off the rational root on both sides
        d = (hi - lo) / 4
        while P.count_roots(seq, mid - d, mid + d) != 1:
            d /= 2
        left = P.count_roots(seq, lo, mid - d)
        _bisect(q, seq, lo, mid - d, left, out)
        out.append(RealInterval(mid, mid))
        _bisect(q, seq, mid + d, hi, n - left - 1, out)
        return
    left = P.count_roots(seq, lo, mid)
    _bisect(q, seq, lo, mid, left, out)
    _bisect(q, seq, mid, hi, n - left, out)


def refine(a: AlgebraicReal, width) -> RealInterval:
    return a.refine(Fraction(width))


def compare_rational(a: AlgebraicReal, r: Fraction) -> int:
    """Exact sign of a - r."""
    lo, hi = a._lo, a._hi
    if lo == hi:
        return (lo > r) - (lo < r)
    if r <= lo:
        return 1  # q(lo) != 0 is an invariant of non-point intervals
    if r > hi:
        return -1
    # lo < r <= hi: is the root in (lo, r] ?
    if P.sign_at(a._q, r) == 0:
        with a._lock:
            a._lo = a._hi = r
        return 0
    if P.count_roots(a._seq, lo, r) == 1:
        with a._lock:
            if a._lo != a._hi:
                a._hi = min(a._hi, r)
        return -1
    with a._lock:
        if a._lo != a._hi:
            a._lo = max(a._lo, r)
    return 1


def algebraic_equal(a: AlgebraicReal, b: AlgebraicReal) -> bool:
    ia, ib = a.interval, b.interval
    if not ia.overlaps(ib):
        return False
    if ia.is_point():
        return compare_rational(b, ia.lo) == 0
    if ib.is_point():
        return compare_rational(a, ib.lo) == 0
    g = P.gcd(a._q, b._q)
    if P.degree(g) < 1:
        return False
    lo, hi = max(ia.lo, ib.lo), min(ia.hi, ib.hi)
    seq = P.sturm_sequence(g)
    if P.evaluate(g, lo) == 0 or (lo < hi and P.count_roots(seq, lo, hi) > 0):
        # the common root lies in both isolating intervals, so it is each one's root
        return True
    return False


def compare(a, b, floor: Fraction | None = None) -> int:
    """Exact comparison of two AlgebraicReals (or an AlgebraicReal with a rational)."""
    floor = precision_floor() if floor is None else floor
    if isinstance(b, (int, Fraction)):
        return compare_rational(a, Fraction(b))
    if isinstance(a, (int, Fraction)):
        return -compare_rational(b, Fraction(a))
    if algebraic_equal(a, b):
        return 0
    w = max(a.interval.width, b.interval.width)
    while True:
        ia, ib = a.interval, b.interval
        if ia.hi < ib.lo:
            return -1
        if ib.hi < ia.lo:
            return 1
        if w < floor:
            raise PrecisionExhausted("distinct algebraic numbers not separated at the floor")
        w = w / 2**8 if w > 0 else Fraction(1, 2**8)
        a.refine(w)
        b.refine(w)
