"""Number fields Q[x]/(f), their elements, and real embeddings as exact scalars.

The scalar domain used by lattices is ``Fraction | Embedded``. An Embedded
value is sigma_i(xi) for a field element xi that is *not* rational (rational
elements collapse to Fraction on construction), so its sign and its position
relative to any rational are always decidable by refinement.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import poly as P
from .algebraic import AlgebraicReal, compare as alg_compare, isolate_real_roots, rational_roots
from .interval import PrecisionExhausted, RealInterval, precision_floor
from .poly import IntegerPolynomial
from .rational import to_fraction


class ReducibleError(ValueError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class MixedFieldError(TypeError):
    pass


# -- irreducibility ------------------------------------------------------------

def _small_primes(count: int) -> list[int]:
    out, k = [], 2
    while len(out) < count:
        if all(k % p for p in out if p * p <= k):
            out.append(k)
        k += 1
    return out


def _gf_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _gf_rem(out, f, p)


def _gf_rem(a, f, p):
    a = _gf_trim([x % p for x in a])
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for j in range(df + 1):
            a[shift + j] = (a[shift + j] - c * f[j]) % p
        _gf_trim(a)
    return a


def _gf_powmod(base, e, f, p):
    result, b = [1], base
    while e:
        if e & 1:
            result = _gf_mulmod(result, b, f, p)
        b = _gf_mulmod(b, b, f, p)
        e >>= 1
    return result


def _gf_gcd(a, b, p):
    a, b = _gf_trim(list(a)), _gf_trim(list(b))
    while b:
        a, b = b, _gf_rem(a, b, p)
    return a


def _prime_factors(n: int) -> list[int]:
    out, k = [], 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def irreducible_mod_p(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic integer polynomial reduced mod p."""
    fp = [c % p for c in f]
    n = len(fp) - 1
    if fp[-1] == 0 or n < 1:
        return False
    x = [0, 1]
    xp = _gf_powmod(x, p**n, fp, p)
    if _gf_trim([(a - b) % p for a, b in zip(xp + [0] * 2, x + [0] * len(xp))]):
        return False
    for q in _prime_factors(n):
        h = _gf_powmod(x, p ** (n // q), fp, p)
        diff = _gf_trim([(a - b) % p for a, b in zip(h + [0] * 2, x + [0] * len(h))])
        g = _gf_gcd(fp, diff, p)
        if len(g) > 1:
            return False
    return True


def irreducibility_certificate(f: IntegerPolynomial) -> str:
    """Return a short certificate string, or raise ReducibleError with a factor.

    Certificates: a prime p with f irreducible mod p; or, for degree <= 3, the
    absence of rational roots; or, for degree 4, absence of rational roots and
    of monic integer quadratic factors.
    """
    d = f.degree
    if d == 1:
        return "degree 1"
    for r in rational_roots(f):
        raise ReducibleError(f"{f!r} has the rational root {r}", factor=(-r, Fraction(1)))
    for p in _small_primes(40):
        if irreducible_mod_p(f.coeffs, p):
            return f"irreducible mod {p}"
    if d <= 3:
        return "no rational root (degree <= 3)"
    if d == 4:
        factor = _quadratic_factor(f.coeffs)
        if factor is not None:
            raise ReducibleError(f"{f!r} has the factor x^2{factor[1]:+d}x{factor[0]:+d}", factor=factor)
        return "no rational root and no quadratic factor (degree 4)"
    raise ReducibleError(f"could not certify irreducibility of {f!r} (degree {d})")


def _quadratic_factor(c: Sequence[int]):
    f0, f1, f2, f3 = c[0], c[1], c[2], c[3]
    divs = [k for k in range(1, abs(f0) + 1) if f0 % k == 0]
    for b0 in divs + [-k for k in divs]:
        e0 = f0 // b0
        # (x^2 + a x + b0)(x^2 + (f3 - a) x + e0)
        disc = f3 * f3 - 4 * (f2 - b0 - e0)
        if disc < 0:
            continue
        s = math.isqrt(disc)
        if s * s != disc:
            continue
        for num in (f3 + s, f3 - s):
            if num % 2:
                continue
            a = num // 2
            if a * e0 + (f3 - a) * b0 == f1:
                return (b0, a)
    return None


# -- fields ------------------------------------------------------------------

class NumberField:
    """Q[x]/(f) for a monic irreducible integer polynomial f."""

    def __init__(self, f: IntegerPolynomial | Sequence[int]):
        if not isinstance(f, IntegerPolynomial):
            f = IntegerPolynomial(tuple(f))
        if not f.is_monic():
            raise ValueError(f"defining polynomial {f!r} is not monic")
        if f.degree < 1:
            raise ValueError("defining polynomial must have degree >= 1")
        self.poly = f
        self.degree = f.degree
        self.irreducibility = irreducibility_certificate(f)
        self.roots: list[AlgebraicReal] = isolate_real_roots(f)
        self.totally_real = len(self.roots) == self.degree
        d = self.degree
        # alpha^k reduced mod f, for k < 2d - 1
        self._powers = []
        cur = [Fraction(0)] * d
        cur[0] = Fraction(1)
        for _ in range(2 * d - 1):
            self._powers.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * f.coeffs[i]

    def __reduce__(self):
        return (field_from_coeffs, (self.poly.coeffs,))

    def __eq__(self, other):
        return isinstance(other, NumberField) and other.poly == self.poly

    def __hash__(self):
        return hash(("NumberField", self.poly.coeffs))

    def __repr__(self):
        return f"NumberField({self.poly!r})"

    def element(self, coords: Iterable) -> FieldElement:
        return FieldElement(self, tuple(to_fraction(c) for c in coords))

    def rational(self, q) -> FieldElement:
        c = [Fraction(0)] * self.degree
        c[0] = to_fraction(q)
        return FieldElement(self, tuple(c))

    @property
    def one(self) -> FieldElement:
        return self.rational(1)

    @property
    def zero(self) -> FieldElement:
        return self.rational(0)

    @property
    def alpha(self) -> FieldElement:
        if self.degree == 1:
            return self.rational(-self.poly.coeffs[0])
        c = [Fraction(0)] * self.degree
        c[1] = Fraction(1)
        return FieldElement(self, tuple(c))

    def from_poly(self, coeffs: Sequence) -> FieldElement:
        """Reduce an arbitrary rational polynomial in alpha modulo f."""
        out = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            c = to_fraction(c)
            if not c:
                continue
            if k < len(self._powers):
                pk = self._powers[k]
            else:
                pk = self.power_of_alpha(k)
            for i in range(self.degree):
                if pk[i]:
                    out[i] += c * pk[i]
        return FieldElement(self, tuple(out))

    def power_of_alpha(self, k: int) -> tuple:
        if k < len(self._powers):
            return self._powers[k]
        return (self.alpha ** k).coords

    def embedding_interval(self, elem: FieldElement, i: int, width: Fraction) -> RealInterval:
        if not self.totally_real:
            raise ValueError(f"{self!r} is not totally real; real embeddings are not all defined")
        return _embed(elem.coords, self.roots[i], Fraction(width))

    def discriminant(self) -> Fraction:
        return P.discriminant(self.poly.q())


@functools.lru_cache(maxsize=None)
def field_from_coeffs(coeffs: tuple) -> NumberField:
    return NumberField(IntegerPolynomial(tuple(coeffs)))


def field_new(f) -> NumberField:
    coeffs = f.coeffs if isinstance(f, IntegerPolynomial) else tuple(int(c) for c in f)
    return field_from_coeffs(tuple(coeffs))


def _embed(coords: tuple, root: AlgebraicReal, width: Fraction) -> RealInterval:
    """Interval around g(root) of width <= ``width`` (mean-value form)."""
    g = P.trim(coords)
    if len(g) <= 1:
        return RealInterval.point(g[0] if g else 0)
    dg = P.derivative(g)
    rw = width
    iv = root.interval
    while True:
        if iv.width > rw:
            iv = root.refine(rw)
        if iv.is_point():
            return RealInterval.point(P.evaluate(g, iv.lo))
        m = iv.mid
        rad = iv.width / 2
        val = P.evaluate(g, m)
        dbound = abs(_horner_interval(dg, iv)).hi
        out = RealInterval(val - dbound * rad, val + dbound * rad)
        if out.width <= width:
            bits = max(8, (1 / width).numerator.bit_length() + 4)
            return out.round_outward(bits)
        # aim below the target next time
        ratio = out.width / width
        rw = iv.width / (2 * (ratio.numerator // ratio.denominator + 1))


def _horner_interval(p: tuple, x: RealInterval) -> RealInterval:
    acc = RealInterval.point(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True, slots=True)
class FieldElement:
    field: NumberField
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise ValueError("coordinate vector has the wrong length")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFieldError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coords, o.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coords, o.coords)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return FieldElement(self.field, tuple(a * other for a in self.coords))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.field.from_poly(P.mul(P.trim(self.coords), P.trim(o.coords)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def rational_value(self) -> Fraction | None:
        return self.coords[0] if self.is_rational() else None

    def mult_matrix(self) -> list[list[Fraction]]:
        """Matrix of x -> self*x in the power basis (column j = self*alpha^j)."""
        d = self.field.degree
        cols = [(self * FieldElement(self.field, self.field.power_of_alpha(j))).coords for j in range(d)]
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if self.is_rational():
            return self.field.rational(1 / self.coords[0])
        from .linalg import solve

        m = self.mult_matrix()
        e = [[Fraction(int(i == 0))] for i in range(self.field.degree)]
        x = solve(m, e)
        return FieldElement(self.field, tuple(r[0] for r in x))

    def norm(self) -> Fraction:
        """Exact norm as Res(f, g) with g the coordinate polynomial (f monic)."""
        g = P.trim(self.coords)
        if not g:
            return Fraction(0)
        return P.resultant(self.field.poly.q(), g)

    def trace(self) -> Fraction:
        m = self.mult_matrix()
        return sum((m[i][i] for i in range(len(m))), Fraction(0))

    def charpoly(self) -> QPolyT:
        """Characteristic polynomial of multiplication by self (monic, lowest first)."""
        d = self.field.degree
        # Newton's identities from power traces
        p = [Fraction(0)] * (d + 1)
        x = self.field.one
        for k in range(1, d + 1):
            x = x * self
            p[k] = x.trace()
        e = [Fraction(1)] + [Fraction(0)] * d
        for k in range(1, d + 1):
            s = sum(((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1)), Fraction(0))
            e[k] = s / k
        # x^d - e1 x^{d-1} + e2 x^{d-2} - ...
        return tuple((-1) ** (d - j) * e[d - j] for j in range(d + 1))

    def minimal_polynomial(self) -> IntegerPolynomial:
        cp = self.charpoly()
        g = P.gcd(cp, P.derivative(cp))
        return IntegerPolynomial.from_rational(P.divmod_poly(cp, g)[0])

    def embed(self, i: int, width=Fraction(1, 2**32)) -> RealInterval:
        return self.field.embedding_interval(self, i, Fraction(width))

    def sign_at(self, i: int, floor: Fraction | None = None) -> int:
        """Exact sign of sigma_i(self)."""
        floor = precision_floor() if floor is None else floor
        if self.is_rational():
            q = self.coords[0]
            return (q > 0) - (q < 0)
        w = Fraction(1, 2**16)
        while True:
            iv = self.embed(i, w)
            if iv.lo > 0:
                return 1
            if iv.hi < 0:
                return -1
            if w < floor:
                raise PrecisionExhausted("sign of a nonzero embedding not decided")
            w = w / 2**16

    def to_json(self) -> list[str]:
        from .rational import format_rational

        return [format_rational(c) for c in self.coords]

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*a" + (f"^{k}" if k > 1 else ""))
        return "(" + (" + ".join(terms) or "0") + ")"


QPolyT = tuple


# -- exact real scalars ----------------------------------------------------------

class Embedded:
    """sigma_index(elem) for an irrational element of a totally real field."""

    __slots__ = ("elem", "index", "_alg")

    def __init__(self, elem: FieldElement, index: int):
        if elem.is_rational():
            raise ValueError("use embedded() to get a Fraction for rational elements")
        if not 0 <= index < elem.field.degree:
            raise IndexError("embedding index out of range")
        self.elem = elem
        self.index = index
        self._alg = None

    @property
    def field(self) -> NumberField:
        return self.elem.field

    def __reduce__(self):
        return (Embedded, (self.elem, self.index))

    def __hash__(self):
        return hash((self.elem.field, self.elem.coords, self.index))

    def key(self):
        return (self.elem.field, self.index)

    def _lift(self, other) -> FieldElement | None:
        if isinstance(other, Embedded):
            if other.key() != self.key():
                raise MixedFieldError(
                    "mixed algebraic fields in one coordinate are not supported"
                )
            return other.elem
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.elem.field.rational(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(self.elem + o, self.index)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(self.elem - o, self.index)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(o - self.elem, self.index)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return Fraction(0)
            return Embedded(self.elem * other, self.index)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(self.elem * o, self.index)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(self.elem / o, self.index)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return embedded(o / self.elem, self.index)

    def __neg__(self):
        return Embedded(-self.elem, self.index)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return embedded(self.elem ** n, self.index)

    def __abs__(self):
        return self if self.sign() > 0 else -self

    def sign(self) -> int:
        return self.elem.sign_at(self.index)

    def interval(self, width=Fraction(1, 2**32)) -> RealInterval:
        return self.elem.embed(self.index, width)

    def __float__(self):
        return float(self.interval(Fraction(1, 2**60)).mid)

    def __floor__(self) -> int:
        # never an integer, so floor is decided by refinement
        w = Fraction(1, 2**16)
        while True:
            iv = self.interval(w)
            a = iv.lo.__floor__()
            if a == iv.hi.__floor__():
                return a
            w = w / 2**16
            if w < precision_floor():
                raise PrecisionExhausted("floor not decided")

    def __ceil__(self) -> int:
        return self.__floor__() + 1

    def algebraic(self) -> AlgebraicReal:
        """The same number as an AlgebraicReal (minimal polynomial + interval)."""
        if self._alg is None:
            mp = self.elem.minimal_polynomial()
            roots = isolate_real_roots(mp)
            w = Fraction(1, 2**8)
            while True:
                iv = self.interval(w)
                hits = [r for r in roots if r.interval.overlaps(iv)]
                if len(hits) == 1:
                    self._alg = hits[0]
                    break
                for r in hits:
                    r.refine(w)
                w /= 2**8
        return self._alg

    def _cmp(self, other) -> int:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return (self - other).sign()
        if isinstance(other, Embedded):
            if other.key() == self.key():
                diff = self - other
                return _fsign(diff) if isinstance(diff, Fraction) else diff.sign()
            return alg_compare(self.algebraic(), other.algebraic())
        raise TypeError(f"cannot compare Embedded with {type(other).__name__}")

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Embedded)) and not isinstance(other, bool):
            if isinstance(other, Embedded) and other.key() == self.key():
                return other.elem == self.elem
            if not isinstance(other, Embedded):
                return False  # irrational versus rational
            return self._cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def to_json(self) -> dict:
        return {
            "field": list(self.elem.field.poly.coeffs),
            "root": self.index,
            "coords": self.elem.to_json(),
        }

    def __repr__(self):
        return f"sigma{self.index}{self.elem!r}"


def _fsign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def embedded(elem: FieldElement, index: int):
    """sigma_index(elem) as a Fraction when rational, else an Embedded."""
    if elem.is_rational():
        return elem.coords[0]
    return Embedded(elem, index)


Scalar = Fraction | Embedded


def as_scalar(x):
    if isinstance(x, Embedded):
        return x
    if isinstance(x, dict):
        return scalar_from_json(x)
    return to_fraction(x)


def scalar_from_json(x):
    if isinstance(x, dict):
        K = field_new(tuple(int(c) for c in x["field"]))
        return embedded(K.element(x["coords"]), int(x["root"]))
    return to_fraction(x)


def scalar_to_json(x):
    if isinstance(x, Embedded):
        return x.to_json()
    from .rational import format_rational

    return format_rational(x)


def sign(x) -> int:
    if isinstance(x, Embedded):
        return x.sign()
    if isinstance(x, RealInterval):
        if x.lo > 0:
            return 1
        if x.hi < 0:
            return -1
        raise PrecisionExhausted("interval sign undecided")
    return _fsign(Fraction(x))


def interval_of(x, width=Fraction(1, 2**32)) -> RealInterval:
    if isinstance(x, Embedded):
        return x.interval(width)
    if isinstance(x, RealInterval):
        return x
    if isinstance(x, ProductValue):
        return x.interval(width)
    return RealInterval.point(x)


def field_coords(x, K: NumberField) -> tuple:
    """Coordinates of a scalar in K (rationals embed diagonally)."""
    if isinstance(x, Embedded):
        if x.field != K:
            raise MixedFieldError("mixed algebraic fields in one coordinate are not supported")
        return x.elem.coords
    return K.rational(x).coords


# -- products ------------------------------------------------------------------

class ProductValue:
    """Exact product q * prod(factors) of Embedded values from different
    (field, index) pairs; compared through refined intervals."""

    __slots__ = ("q", "factors")

    def __init__(self, q: Fraction, factors: tuple):
        self.q = q
        self.factors = tuple(factors)

    def interval(self, width=Fraction(1, 2**32)) -> RealInterval:
        n = len(self.factors)
        w = Fraction(width)
        while True:
            acc = RealInterval.point(self.q)
            ivs = [f.interval(w / (4 * n)) for f in self.factors]
            for iv in ivs:
                acc = acc * iv
            if acc.width <= width:
                return acc
            w = w / max(2, int(acc.width / width) + 1)

    def sign(self) -> int:
        s = _fsign(self.q)
        for f in self.factors:
            s *= f.sign()
        return s

    def __abs__(self):
        return ProductValue(abs(self.q), tuple(abs(f) for f in self.factors))

    def __float__(self):
        return float(self.interval(Fraction(1, 2**60)).mid)

    def to_json(self):
        from .rational import format_rational

        return {"rational": format_rational(self.q), "factors": [f.to_json() for f in self.factors]}

    def __repr__(self):
        return f"ProductValue({self.q} * {' * '.join(map(repr, self.factors))})"


def product_form(w: Sequence):
    """Exact product of coordinates; see module docs for the value kinds."""
    q = Fraction(1)
    groups: dict = {}
    intervals = []
    for x in w:
        if isinstance(x, RealInterval):
            intervals.append(x)
        elif isinstance(x, Embedded):
            k = x.key()
            groups[k] = x.elem * groups[k] if k in groups else x.elem
        else:
            x = Fraction(x)
            if x == 0:
                return Fraction(0)
            q *= x
    if intervals:
        acc = RealInterval.point(q)
        for k, e in groups.items():
            acc = acc * interval_of(embedded(e, k[1]))
        for iv in intervals:
            acc = acc * iv
        return acc
    # collapse full-norm groups: sigma_0(xi_0)...sigma_{d-1}(xi_{d-1}) with xi_i = r_i * xi
    by_field: dict = {}
    for (K, i), e in groups.items():
        by_field.setdefault(K, {})[i] = e
    factors = []
    for K, parts in by_field.items():
        if len(parts) == K.degree:
            collapsed = _collapse_norm(parts)
            if collapsed is not None:
                q *= collapsed
                continue
        for i in sorted(parts):
            v = embedded(parts[i], i)
            if isinstance(v, Fraction):
                q *= v
            else:
                factors.append(v)
    if q == 0:
        return Fraction(0)
    if not factors:
        return q
    if len(factors) == 1:
        return factors[0] * q
    return ProductValue(q, tuple(factors))


def _collapse_norm(parts: dict):
    elems = [parts[i] for i in sorted(parts)]
    base = elems[0]
    if base.is_zero():
        return Fraction(0)
    ratio = Fraction(1)
    for e in elems[1:]:
        r = e / base
        if not r.is_rational():
            return None
        ratio *= r.coords[0]
    return ratio * base.norm()


def compare_abs(a, b, floor: Fraction = Fraction(1, 2**128)) -> tuple[int, bool]:
    """Compare |a| and |b| for values returned by product_form.

    Returns (sign of |a| - |b|, tie_flag). tie_flag is True when the values
    could not be separated above ``floor`` and 0 was reported.
    """
    a, b = _abs_value(a), _abs_value(b)
    if isinstance(a, (Fraction, Embedded)) and isinstance(b, (Fraction, Embedded)):
        if isinstance(a, Fraction) and isinstance(b, Fraction):
            return _fsign(a - b), False
        try:
            if isinstance(a, Embedded):
                return a._cmp(b), False
            return -b._cmp(a), False
        except MixedFieldError:
            pass
    if isinstance(a, Fraction) and a == 0:
        return (0 if _is_zero(b) else -1), False
    if isinstance(b, Fraction) and b == 0:
        return (0 if _is_zero(a) else 1), False
    w = Fraction(1, 2**32)
    while True:
        ia, ib = interval_of(a, w), interval_of(b, w)
        if ia.hi < ib.lo:
            return -1, False
        if ib.hi < ia.lo:
            return 1, False
        if w < floor or (isinstance(a, RealInterval) or isinstance(b, RealInterval)):
            return 0, True
        w = w / 2**32


def _is_zero(x) -> bool:
    return isinstance(x, Fraction) and x == 0


def _abs_value(x):
    if isinstance(x, (Fraction, int)):
        return abs(Fraction(x))
    if isinstance(x, RealInterval):
        return abs(x)
    return abs(x)
