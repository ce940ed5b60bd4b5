import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from glclab.dynamics import PreconditionError, apply_diag
from glclab.exact import linalg as LA
from glclab.exact.numfield import embedded, field_new, product_form
from glclab.lattice import Grid, grid_equal
from glclab.lattice.core import identity_lattice
from glclab.numberfield import (
    KLattice,
    build_lattice,
    find_units,
    fixed_grid_solve,
    id_conditions_check,
    order_of,
    rational_grid_fl_certificate,
    require_totally_real,
    unit_stabilizer,
    unit_to_diag,
    verify_unit,
)
from glclab.numberfield.units import certified_rank, cond1_for, log_vector

K3 = field_new((-1, -3, 0, 1))
ZA = KLattice.power_basis(K3)
A = K3.alpha


def _brute_order(lam, D, box):
    """All xi with coordinates in (1/D)Z, |coord| <= box, and xi*lam in lam."""
    d = lam.degree
    out = set()
    for c in itertools.product(range(-box * D, box * D + 1), repeat=d):
        xi = lam.field.element([Fraction(x, D) for x in c])
        if all(lam.contains(xi * b) for b in lam.basis):
            out.add(xi.coords)
    return out


def test_order_of_power_basis():
    od = order_of(ZA)
    assert od.certified and od.contains_one
    assert od.order.same_as(ZA)


def test_order_of_span_1_2alpha_brute_force():
    K = field_new((-2, 0, 1))
    lam = KLattice.from_coords(K, [[1, 0], [0, 2]])
    od = order_of(lam)
    assert od.order.same_as(lam)
    ref = _brute_order(lam, 4, 3)
    mine = {c for c in ref if od.order.contains(K.element(c))}
    assert mine == ref
    # and every order point in the box is found by the brute force
    for c in itertools.product(range(-12, 13), repeat=2):
        xi = K.element([Fraction(x, 4) for x in c])
        if od.order.contains(xi) and max(abs(x) for x in xi.coords) <= 3:
            assert xi.coords in ref


def test_order_of_non_ring_lattice():
    # Lambda = span(1, alpha/2, alpha^2) is a module but not a ring
    lam = KLattice.from_coords(K3, [[1, 0, 0], [0, Fraction(1, 2), 0], [0, 0, 1]])
    od = order_of(lam)
    for xi in od.order.basis:
        assert all(lam.contains(xi * b) for b in lam.basis)
    ref = _brute_order(lam, 2, 1)
    assert all(od.order.contains(K3.element(c)) for c in ref)


def test_units_of_cubic():
    r = verify_unit(A, ZA)
    assert r.ok and r.norm == 1 and r.totally_positive is False
    r2 = verify_unit(A - 2, ZA)
    assert r2.ok and r2.norm == -1
    sq = verify_unit(A * A, ZA)
    assert sq.ok and sq.totally_positive is True
    assert sq.M == [[0, 1, 0], [0, 3, 1], [1, 0, 3]]
    assert not verify_unit(A + 3, ZA).ok
    assert not verify_unit(K3.element((Fraction(1, 2), 0, 0)), ZA).ok


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_unit_group_closed(i, j):
    w = (A ** abs(i)) * ((A - 2) ** abs(j))
    if i < 0:
        w = w.inverse()
    r = verify_unit(w, ZA)
    assert r.ok
    assert abs(LA.det(r.M)) == 1
    assert LA.det(r.M) == r.norm


def test_find_units_and_rank():
    us = find_units(ZA, 3)
    assert us.rank_upper == 2
    assert us.rank_lower == 2
    omegas = [u.omega for u in us]
    assert A in omegas and K3.one in omegas
    vecs = [log_vector(u.omega) for u in us]
    assert certified_rank(vecs) <= 2


def test_stabilizer_matches_unit():
    rec = verify_unit(A * A, ZA)
    cert = unit_stabilizer(rec, ZA)
    assert cert.status == "yes" and cert.matches_unit
    assert abs(LA.det(cert.M)) == 1
    with pytest.raises(PreconditionError):
        unit_to_diag(verify_unit(A, ZA))


def test_stabilizer_exact_entrywise():
    rec = verify_unit(A * A, ZA)
    a = unit_to_diag(rec)
    x = build_lattice(ZA)
    ax = apply_diag(a, x)
    for i in range(3):
        for j in range(3):
            rhs = sum((x.basis[i][k] * rec.M[k][j] for k in range(3)), Fraction(0))
            assert ax.basis[i][j] == rhs


def test_id_conditions_cubic():
    rep = id_conditions_check([A * A, (A - 2) ** 2], K3)
    assert (rep.cond1, rep.cond2, rep.cond3) == ("yes", "yes", "yes")
    assert rep.gfl_claim
    assert cond1_for(K3.one) == "no"
    assert cond1_for(K3.rational(-1)) == "no"


def test_id_conditions_quadratic_guard():
    K = field_new((-2, 0, 1))
    rep = id_conditions_check([(K.alpha + 1) ** 2], K)
    assert not rep.gfl_claim
    assert any("d >= 3" in n for n in rep.notes)


def test_not_totally_real_refused():
    with pytest.raises(PreconditionError):
        require_totally_real(field_new((-2, 0, 0, 1)))


@settings(max_examples=15)
@given(st.tuples(st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5)))
def test_fixed_grid_is_fixed(theta_coords):
    theta = ZA.element(theta_coords)
    rec = verify_unit(A * A, ZA)
    fg = fixed_grid_solve(rec, theta, ZA)
    assert fg.fixed and fg.grid.is_rational()
    # independent check: eta (omega - 1) = theta and the unit moves y by a lattice vector
    assert fg.eta * (A * A - 1) == theta
    assert fg.norm_bound % fg.denominator == 0
    a = unit_to_diag(rec)
    assert grid_equal(apply_diag(a, fg.grid), fg.grid)


def test_fixed_grid_theta_one():
    fg = fixed_grid_solve(verify_unit(A * A, ZA), K3.one, ZA)
    assert fg.grid.t == (Fraction(2, 3),) * 3
    assert fg.denominator == 3 and fg.norm_bound == 3


def test_fixed_grid_rejects_trivial_unit():
    with pytest.raises(PreconditionError):
        fixed_grid_solve(verify_unit(K3.one, ZA), K3.one, ZA)


@given(st.tuples(*[st.fractions(min_value=0, max_value=1, max_denominator=8)] * 3))
def test_fl_certificate_sound_and_minimal(t):
    x = build_lattice(ZA)
    y = Grid(x, t)
    cert = rational_grid_fl_certificate(y)
    assert cert.verify()
    assert cert.minimality == "claimed"
    # minimal: for 0 < k < n the vector k*t is not integral, so 0 is not in k*y
    for k in range(1, cert.n):
        assert any((k * c).denominator != 1 for c in y.t)
    # w in n*y with N(w) = 0, computed from the embedded coordinates
    w = x.matvec([m + cert.n * c for m, c in zip(cert.m, y.t)])
    assert product_form(w) == 0


def test_fl_certificate_plain_lattice_unclaimed():
    y = Grid(identity_lattice(2), (Fraction(1, 4), Fraction(1, 6)))
    cert = rational_grid_fl_certificate(y)
    assert cert.n == 12 and cert.minimality == "unclaimed"


def test_build_lattice_covolume():
    x = build_lattice(ZA)
    assert x.det_sq() == 81
    assert x.is_unimodular()
    assert x.basis[0][1] == embedded(A, 0)
