from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, strategies as st

from glclab.exact.numfield import (
    Embedded,
    MixedFieldError,
    NumberField,
    ProductValue,
    ReducibleError,
    compare_abs,
    embedded,
    field_new,
    interval_of,
    product_form,
    scalar_from_json,
    scalar_to_json,
)

coord = st.fractions(min_value=-6, max_value=6, max_denominator=4)
coords3 = st.tuples(coord, coord, coord)

K3 = field_new((-1, -3, 0, 1))
ALPHA = sympy.Symbol("a")
MINPOLY = ALPHA**3 - 3 * ALPHA - 1


def _sym_norm(c):
    # N(c0 + c1 a + c2 a^2) = Res_a(f, g) for monic f
    g = sum(sympy.Rational(x.numerator, x.denominator) * ALPHA**k for k, x in enumerate(c))
    from sympy.polys.subresultants_qq_zz import res

    return res(MINPOLY, sympy.expand(g), ALPHA) if g != 0 else 0


def test_field_construction_and_refusals():
    assert K3.totally_real and K3.degree == 3
    assert K3.discriminant() == 81
    with pytest.raises(ReducibleError):
        field_new((-1, 0, 1))
    with pytest.raises(ValueError):
        NumberField((1, 0, 2))  # not monic
    assert not field_new((-2, 0, 0, 1)).totally_real


def test_units_of_cubic_known_values():
    a = K3.alpha
    assert a.norm() == 1
    assert (a - 2).norm() == -1
    assert (a * a).norm() == 1
    # norm via (-1)^d f(c) for alpha - c
    for c in range(-3, 4):
        assert (a - c).norm() == (-1) ** 3 * (c**3 - 3 * c - 1)


@given(coords3, coords3)
def test_norm_multiplicative_and_matches_resultant(x, y):
    a, b = K3.element(x), K3.element(y)
    assert (a * b).norm() == a.norm() * b.norm()
    assert a.norm() == _sym_norm(x)


@given(coords3.filter(lambda c: any(c)))
def test_inverse(x):
    a = K3.element(x)
    assert a * a.inverse() == K3.one


@given(coords3, coords3)
def test_embedding_is_ring_homomorphism(x, y):
    a, b = K3.element(x), K3.element(y)
    w = Fraction(1, 2**30)
    for i in range(3):
        ea, eb = a.embed(i, w), b.embed(i, w)
        s, p = (a + b).embed(i, w), (a * b).embed(i, w)
        assert s.overlaps(ea + eb)
        assert p.overlaps(ea * eb)


def test_trace_and_charpoly():
    a = K3.alpha
    assert a.trace() == 0
    assert (a * a).trace() == 6
    assert a.minimal_polynomial().coeffs == (-1, -3, 0, 1)


def test_embedded_comparisons_exact():
    a = K3.alpha
    s = [embedded(a, i) for i in range(3)]
    assert s[0] < s[1] < s[2]
    assert s[0] < Fraction(-3, 2) and s[2] > Fraction(187, 100)
    assert embedded(K3.rational(5), 1) == 5
    assert isinstance(s[0], Embedded)
    # sigma_i(a)^3 - 3 sigma_i(a) - 1 = 0 exactly
    for e in s:
        assert e * e * e - 3 * e - 1 == 0


def test_mixed_fields_refused():
    L = field_new((-2, 0, 1))
    with pytest.raises(MixedFieldError):
        _ = embedded(K3.alpha, 0) + embedded(L.alpha, 0)


def test_product_form_collapses_to_norm():
    a = K3.alpha - 2
    w = [embedded(a, i) for i in range(3)]
    assert product_form(w) == a.norm() == -1
    assert product_form([Fraction(3), Fraction(0), embedded(a, 0)]) == 0


def test_product_value_two_fields():
    L = field_new((-2, 0, 1))
    w = [embedded(K3.alpha, 2), embedded(L.alpha, 1)]
    v = product_form(w)
    assert isinstance(v, ProductValue)
    iv = interval_of(v, Fraction(1, 2**40))
    mpmath.mp.dps = 50
    ref = mpmath.findroot(lambda x: x**3 - 3 * x - 1, 1.88) * mpmath.sqrt(2)
    assert iv.lo - Fraction(1, 10**30) <= Fraction(mpmath.nstr(ref, 45)) <= iv.hi + Fraction(1, 10**30)
    assert iv.hi - iv.lo < Fraction(1, 2**30)
    assert compare_abs(v, Fraction(2))[0] == 1
    assert compare_abs(v, Fraction(3))[0] == -1


def test_compare_abs_exact_tie():
    e = embedded(K3.alpha, 0)
    assert compare_abs(e, -e) == (0, False)
    assert compare_abs(Fraction(1, 3), Fraction(-1, 3)) == (0, False)


def test_scalar_json_roundtrip():
    e = embedded(K3.element((1, 2, Fraction(-1, 3))), 2)
    assert scalar_from_json(scalar_to_json(e)) == e
    assert scalar_from_json(scalar_to_json(Fraction(-7, 3))) == Fraction(-7, 3)


def test_embedding_interval_encloses_sympy_root():
    roots = sorted(sympy.Poly(MINPOLY, ALPHA).real_roots(), key=float)
    slack = Fraction(1, 10**25)
    for i, r in enumerate(roots):
        iv = K3.alpha.embed(i, Fraction(1, 2**50))
        val = Fraction(str(sympy.N(r, 40)))
        assert iv.lo - slack <= val <= iv.hi + slack
        assert iv.width <= Fraction(1, 2**50)
