"""Rational helpers: canonical "p/q" strings, denominators, integer roots."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

RationalLike = int | Fraction | str


def to_fraction(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def parse_rational(s: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Decimal points are refused on purpose."""
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise ValueError(f"not an exact rational literal: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not an exact rational literal: {s!r}") from exc


def format_rational(q: RationalLike) -> str:
    q = to_fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    d = 1
    for v in values:
        d = math.lcm(d, Fraction(v).denominator)
    return d


def floor_q(q: Fraction) -> int:
    return q.numerator // q.denominator


def ceil_q(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def exact_root(q: Fraction, k: int) -> Fraction | None:
    """Return ``q**(1/k)`` if it is rational, else None (q >= 0)."""
    if q < 0:
        raise ValueError("negative radicand")
    p = _iroot_exact(q.numerator, k)
    r = _iroot_exact(q.denominator, k)
    if p is None or r is None:
        return None
    return Fraction(p, r)


def _iroot_exact(n: int, k: int) -> int | None:
    r = iroot_floor(n, k)
    return r if r**k == n else None


def iroot_floor(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, exact."""
    if n < 0:
        raise ValueError("negative radicand")
    if n < 2:
        return n
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def root_bounds(q: Fraction, k: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Dyadic bounds lo <= q**(1/k) <= hi with hi - lo <= 2**-bits."""
    if q < 0:
        raise ValueError("negative radicand")
    scale = 1 << bits
    # floor((q * scale**k) ** (1/k)) / scale
    num = q.numerator * scale**k
    lo_int = iroot_floor(num // q.denominator, k)
    lo = Fraction(lo_int, scale)
    hi = Fraction(lo_int + 1, scale)
    return lo, hi
