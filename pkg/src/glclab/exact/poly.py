"""Univariate polynomials over Z and Q, Sturm sequences and resultants.

Coefficient lists are lowest-degree first throughout. Rational polynomials
are plain tuples of Fractions; IntegerPolynomial is the public wrapper with
integer coefficients used for field-defining and minimal polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import bareiss_det

QPoly = tuple  # tuple[Fraction, ...], trimmed, () is the zero polynomial


def trim(c: Sequence) -> QPoly:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(Fraction(x) for x in c)


def degree(p: QPoly) -> int:
    return len(p) - 1


def add(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p: QPoly, q: QPoly) -> QPoly:
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def mul(p: QPoly, q: QPoly) -> QPoly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def scale(p: QPoly, c) -> QPoly:
    return trim([a * c for a in p])


def divmod_poly(p: QPoly, q: QPoly) -> tuple[QPoly, QPoly]:
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] / lc
        quot[k] = c
        if c:
            for j in range(dq + 1):
                r[k + j] -= c * q[j]
    return trim(quot), trim(r[:dq])


def rem(p: QPoly, q: QPoly) -> QPoly:
    return divmod_poly(p, q)[1]


def monic(p: QPoly) -> QPoly:
    return scale(p, 1 / p[-1]) if p else p


def gcd(p: QPoly, q: QPoly) -> QPoly:
    a, b = trim(p), trim(q)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def derivative(p: QPoly) -> QPoly:
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p: QPoly, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def sign_at(p: QPoly, x: Fraction) -> int:
    v = evaluate(p, x)
    return (v > 0) - (v < 0)


def primitive(p: QPoly) -> tuple[int, ...]:
    """Integer primitive part with positive leading coefficient."""
    if not p:
        return ()
    den = math.lcm(*(c.denominator for c in p))
    ints = [int(c * den) for c in p]
    g = math.gcd(*ints)
    if ints[-1] < 0:
        g = -g
    return tuple(x // g for x in ints)


@dataclass(frozen=True, slots=True)
class IntegerPolynomial:
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = [int(x) for x in self.coeffs]
        if any(type(x) is bool for x in self.coeffs):
            raise TypeError("boolean coefficient")
        while c and c[-1] == 0:
            c.pop()
        if not c:
            raise ValueError("zero polynomial")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_rational(cls, p: QPoly) -> IntegerPolynomial:
        return cls(primitive(trim(p)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def q(self) -> QPoly:
        return trim(self.coeffs)

    def __call__(self, x):
        return evaluate(self.coeffs, x)

    def derivative(self) -> QPoly:
        return derivative(self.q())

    def is_squarefree(self) -> bool:
        return degree(gcd(self.q(), self.derivative())) == 0

    def squarefree_part(self) -> IntegerPolynomial:
        g = gcd(self.q(), self.derivative())
        return IntegerPolynomial.from_rational(divmod_poly(self.q(), g)[0])

    def to_json(self) -> list[int]:
        return list(self.coeffs)

    def __repr__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            terms.append(f"{coef}{mono}")
        return "".join(terms).lstrip("+") or "0"


# -- Sturm sequences -------------------------------------------------------

def sturm_sequence(p: QPoly) -> list[QPoly]:
    seq = [trim(p), derivative(trim(p))]
    while seq[-1] and degree(seq[-1]) > 0:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(scale(r, -1))
    return [s for s in seq if s]


def sign_changes(seq: list[QPoly], x: Fraction) -> int:
    signs = [s for s in (sign_at(p, x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sign_changes_at_infinity(seq: list[QPoly], positive: bool) -> int:
    signs = []
    for p in seq:
        s = 1 if p[-1] > 0 else -1
        if not positive and degree(p) % 2 == 1:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(seq: list[QPoly], a: Fraction, b: Fraction) -> int:
    """Distinct real roots in the half-open interval (a, b]."""
    return sign_changes(seq, a) - sign_changes(seq, b)


def count_real_roots(p: QPoly) -> int:
    seq = sturm_sequence(p)
    return sign_changes_at_infinity(seq, False) - sign_changes_at_infinity(seq, True)


def cauchy_bound(p: QPoly) -> Fraction:
    """A power of two strictly larger than every root modulus."""
    lc = abs(p[-1])
    m = max((abs(c) / lc for c in p[:-1]), default=Fraction(0))
    b = 1 + m
    k = 1
    while k <= b:
        k *= 2
    return Fraction(k)


# -- resultants --------------------------------------------------------------

def sylvester(p: Sequence[int], q: Sequence[int]) -> list[list[int]]:
    m, n = len(p) - 1, len(q) - 1
    size = m + n
    rows = []
    hp = list(reversed(p))
    hq = list(reversed(q))
    for i in range(n):
        rows.append([0] * i + hp + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + hq + [0] * (size - n - 1 - i))
    return rows


def resultant(p: QPoly, q: QPoly) -> Fraction:
    """Res(p, q) over Q, via an integer Sylvester determinant."""
    p, q = trim(p), trim(q)
    if not p or not q:
        return Fraction(0)
    if degree(p) == 0:
        return p[0] ** degree(q)
    if degree(q) == 0:
        return q[0] ** degree(p)
    dp = math.lcm(*(c.denominator for c in p))
    dq = math.lcm(*(c.denominator for c in q))
    ip = [int(c * dp) for c in p]
    iq = [int(c * dq) for c in q]
    det = bareiss_det(sylvester(ip, iq))
    return Fraction(det) / (Fraction(dp) ** degree(q) * Fraction(dq) ** degree(p))


def discriminant(p: QPoly) -> Fraction:
    p = trim(p)
    n = degree(p)
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(p, derivative(p)) / p[-1]
