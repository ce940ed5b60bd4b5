from fractions import Fraction
import math

import pytest
import sympy
from hypothesis import given, strategies as st

from glclab.exact import linalg as LA
from glclab.exact import poly as P
from glclab.exact.algebraic import (
    AlgebraicReal,
    NotSquarefree,
    algebraic_equal,
    compare,
    compare_rational,
    isolate_real_roots,
    rational_roots,
)
from glclab.exact.interval import (
    RealInterval,
    Sign,
    certified_sign,
    precision_floor,
    refine_until_decided,
    set_precision_floor,
)
from glclab.exact.poly import IntegerPolynomial
from glclab.exact.rational import (
    ceil_q,
    common_denominator,
    exact_root,
    floor_q,
    format_rational,
    iroot_floor,
    parse_rational,
    root_bounds,
)

fractions = st.fractions(min_value=-50, max_value=50, max_denominator=30)
small_ints = st.integers(min_value=-9, max_value=9)


# -- rationals ---------------------------------------------------------------

def test_parse_and_format_roundtrip():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert parse_rational(" 7 ") == 7
    assert format_rational(Fraction(6, 4)) == "3/2"
    with pytest.raises(ValueError):
        parse_rational("0.5")


@given(fractions)
def test_format_parse_inverse(q):
    assert parse_rational(format_rational(q)) == q


@given(fractions)
def test_floor_ceil(q):
    assert floor_q(q) == math.floor(q)
    assert ceil_q(q) == math.ceil(q)


def test_common_denominator():
    assert common_denominator([Fraction(1, 4), Fraction(5, 6), Fraction(3)]) == 12


@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=2, max_value=6))
def test_iroot_floor(n, k):
    r = iroot_floor(n, k)
    assert r**k <= n < (r + 1) ** k


def test_exact_root():
    assert exact_root(Fraction(27, 8), 3) == Fraction(3, 2)
    assert exact_root(Fraction(2), 2) is None


@given(st.fractions(min_value=Fraction(1, 50), max_value=1000, max_denominator=50), st.integers(2, 5))
def test_root_bounds_enclose(q, k):
    lo, hi = root_bounds(q, k, 40)
    assert lo**k <= q <= hi**k
    assert hi - lo <= Fraction(1, 2**40)


# -- intervals ----------------------------------------------------------------

@given(fractions, fractions, fractions, fractions)
def test_interval_ops_contain_members(a, b, c, d):
    x = RealInterval(min(a, b), max(a, b))
    y = RealInterval(min(c, d), max(c, d))
    for u in (x.lo, x.hi, x.mid):
        for v in (y.lo, y.hi, y.mid):
            assert (x + y).lo <= u + v <= (x + y).hi
            assert (x - y).lo <= u - v <= (x - y).hi
            assert (x * y).lo <= u * v <= (x * y).hi


def test_point_intervals_stay_exact():
    a = RealInterval.point(Fraction(1, 3))
    assert (a * a + a).is_point()


def test_certified_sign():
    assert certified_sign(RealInterval(Fraction(1, 10), Fraction(1))) is Sign.POSITIVE
    assert certified_sign(RealInterval(Fraction(-1), Fraction(1))) is Sign.ZERO_OR_UNKNOWN


def test_log_encloses_float_log():
    iv = RealInterval(Fraction(3), Fraction(3)).log(60)
    assert iv.lo <= Fraction(math.log(3)) + Fraction(1, 10**12)
    assert iv.hi >= Fraction(math.log(3)) - Fraction(1, 10**12)
    assert iv.width <= Fraction(1, 2**50)


def test_refine_until_decided_and_floor():
    target = Fraction(1, 2**40)

    def ev(w):
        return RealInterval(target - w, target + w)

    assert refine_until_decided(ev) is Sign.POSITIVE
    # an exact zero is never decided: the loop reports it instead of spinning
    assert refine_until_decided(lambda w: RealInterval(-w, w)) is Sign.ZERO_OR_UNKNOWN


def test_precision_floor_is_settable():
    def ev(w):
        return RealInterval(Fraction(1, 2**70) - w, Fraction(1, 2**70) + w)

    old = precision_floor()
    try:
        set_precision_floor(Fraction(1, 2**20))
        assert refine_until_decided(ev) is Sign.ZERO_OR_UNKNOWN
    finally:
        set_precision_floor(old)
    assert precision_floor() == old
    assert refine_until_decided(ev) is Sign.POSITIVE
    with pytest.raises(ValueError):
        set_precision_floor(0)


# -- polynomials ----------------------------------------------------------------

poly_coeffs = st.lists(small_ints, min_size=1, max_size=6).filter(lambda c: c[-1] != 0)
X = sympy.Symbol("x")


def _sym(c):
    return sympy.Poly(list(reversed(c)), X)


@given(poly_coeffs, poly_coeffs)
def test_poly_mul_divmod_match_sympy(a, b):
    pa, pb = P.trim([Fraction(x) for x in a]), P.trim([Fraction(x) for x in b])
    assert P.mul(pa, pb) == P.trim([Fraction(int(x)) for x in reversed((_sym(a) * _sym(b)).all_coeffs())])
    q, r = P.divmod_poly(pa, pb)
    assert P.add(P.mul(q, pb), r) == pa
    assert P.degree(r) < P.degree(pb) or P.degree(pb) == 0 and not r


@given(poly_coeffs, poly_coeffs)
def test_resultant_matches_sympy(a, b):
    assume_deg = len(a) > 1 and len(b) > 1
    if not assume_deg:
        return
    ours = P.resultant(P.trim([Fraction(x) for x in a]), P.trim([Fraction(x) for x in b]))
    # sympy.resultant mis-signs e.g. Res(x+1, x^3); res() does not
    from sympy.polys.subresultants_qq_zz import res

    assert ours == res(_sym(a).as_expr(), _sym(b).as_expr(), X)


def test_discriminant_values():
    assert P.discriminant([Fraction(c) for c in (-1, -3, 0, 1)]) == 81
    assert P.discriminant([Fraction(c) for c in (-2, 0, 1)]) == 8


@given(poly_coeffs)
def test_sturm_count_matches_sympy(c):
    if len(c) < 2:
        return
    p = IntegerPolynomial(tuple(c))
    expected = len(set(sympy.real_roots(_sym(c))))
    assert P.count_real_roots(p.squarefree_part().q()) == expected


def test_integer_polynomial_primitive():
    p = IntegerPolynomial.from_rational([Fraction(1, 2), Fraction(0), Fraction(3, 2)])
    assert p.coeffs == (1, 0, 3)
    assert not IntegerPolynomial((1, 2, 1)).is_squarefree()


# -- linear algebra ---------------------------------------------------------------

square = st.integers(2, 4).flatmap(lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=n, max_size=n))


@given(square)
def test_det_matches_sympy(a):
    assert LA.det(a) == sympy.Matrix(a).det()
    assert LA.bareiss_det(a) == sympy.Matrix(a).det()


@given(square)
def test_inverse_and_hnf(a):
    if LA.bareiss_det(a) == 0:
        return
    inv = LA.inverse(a)
    assert LA.matmul(a, inv) == LA.identity(len(a))
    h, u = LA.hnf_columns(a)
    assert LA.matmul(a, u) == h
    assert abs(LA.bareiss_det(u)) == 1
    n = len(a)
    for i in range(n):
        assert h[i][i] > 0
        assert all(h[i][j] == 0 for j in range(i + 1, n))
        assert all(0 <= h[i][j] < h[i][i] for j in range(i))
    assert LA.same_column_lattice(a, LA.matmul(a, [[1, 1] + [0] * (n - 2)] + [[0, 1] + [0] * (n - 2)] + [[0] * k + [1] + [0] * (n - k - 1) for k in range(2, n)]))


def test_hnf_against_sympy():
    from sympy.matrices.normalforms import hermite_normal_form

    a = [[4, 6, 2], [0, 3, 9], [1, 1, 5]]
    h, _ = LA.hnf_columns(a)
    # sympy returns the upper-triangular column-style HNF; compare the lattices
    assert LA.same_column_lattice(h, hermite_normal_form(sympy.Matrix(a)).tolist())
    assert abs(LA.bareiss_det(h)) == abs(LA.bareiss_det(a))


def test_lattice_basis_spans():
    vecs = [[2, 0], [0, 2], [1, 1], [3, 1]]
    b = LA.lattice_basis(vecs)
    assert abs(LA.bareiss_det(b)) == 2
    for v in vecs:
        assert LA.solve(LA.transpose(b), [[x] for x in v]) is not None


def test_solve_singular():
    assert LA.rank([[1, 2], [2, 4]]) == 1


# -- algebraic reals -----------------------------------------------------------------

def test_isolate_cubic_roots():
    roots = isolate_real_roots(IntegerPolynomial((-1, -3, 0, 1)))
    assert len(roots) == 3
    expected = sorted(float(r) for r in sympy.real_roots(X**3 - 3 * X - 1))
    for r, e in zip(roots, expected):
        iv = r.refine(Fraction(1, 2**40))
        assert iv.lo <= Fraction(e) + Fraction(1, 10**9) and iv.hi >= Fraction(e) - Fraction(1, 10**9)


def test_rational_roots():
    assert rational_roots(IntegerPolynomial((-6, 1, 1))) == [Fraction(-3), Fraction(2)]


def test_not_squarefree_refused():
    with pytest.raises(NotSquarefree):
        isolate_real_roots(IntegerPolynomial((1, 2, 1)))
    with pytest.raises(ValueError):
        AlgebraicReal(IntegerPolynomial((-2, 0, 1)), RealInterval(Fraction(-2), Fraction(2)))


def test_compare_algebraic():
    r2 = isolate_real_roots(IntegerPolynomial((-2, 0, 1)))[1]
    r3 = isolate_real_roots(IntegerPolynomial((-3, 0, 1)))[1]
    assert compare(r2, r3) == -1
    assert compare_rational(r2, Fraction(141, 100)) == 1
    assert compare_rational(r2, Fraction(142, 100)) == -1
    other = isolate_real_roots(IntegerPolynomial((4, 0, -6, 0, 1)))  # x^4-6x^2+4 has roots sqrt(3)+-1 ...
    assert not any(algebraic_equal(r2, o) for o in other)
    r2b = isolate_real_roots(IntegerPolynomial((-4, 0, 2)).squarefree_part())[1]
    assert algebraic_equal(r2, r2b)
