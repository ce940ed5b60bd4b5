from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from glclab.exact import linalg as LA
from glclab.lattice import (
    Grid,
    Lattice,
    ScaleGroup,
    enumerate_grid_points,
    grid_equal,
    grid_min_product,
    lll_reduce,
    littlewood_witness_search,
    same_lattice,
    scale_grid,
    shortest_vector,
    tau_embed,
    witness_schedule,
)
from glclab.lattice.core import SingularBasis, contains, identity_lattice
from glclab.lattice.reduce import is_lll_reduced
from glclab.lattice.witness import tau_slice_min
from glclab.numberfield import KLattice, build_lattice
from glclab.exact.numfield import field_new

import oracles

entry = st.fractions(min_value=-20, max_value=20, max_denominator=5)


def nonsingular(d):
    return st.lists(st.lists(entry, min_size=d, max_size=d), min_size=d, max_size=d).filter(lambda b: LA.det(b) != 0)


small_basis = st.integers(2, 3).flatmap(
    lambda d: st.lists(st.lists(st.integers(-4, 4).map(Fraction), min_size=d, max_size=d), min_size=d, max_size=d)
).filter(lambda b: LA.det(b) != 0)
shift = st.fractions(min_value=0, max_value=1, max_denominator=6)


def test_singular_basis_refused():
    with pytest.raises(SingularBasis):
        Lattice([[1, 2], [2, 4]])


def test_scale_group_with_rational_root_is_absorbed():
    x = Lattice([[2, 0], [0, 2]], [ScaleGroup((0, 1), Fraction(16))])
    assert x.is_rational() and x.is_unimodular()
    assert x.basis == ((1, 0), (0, 1))


def test_same_lattice_and_grid_equal():
    a = Lattice([[1, 0], [0, 1]])
    b = Lattice([[1, 1], [0, 1]])
    assert same_lattice(a, b) is not None
    assert grid_equal(Grid(a, (Fraction(1, 2), 0)), Grid(b, (Fraction(1, 2), 0)))
    assert grid_equal(Grid(a, (Fraction(3, 2), 0)), Grid(a, (Fraction(1, 2), 0)))
    assert not grid_equal(Grid(a, (Fraction(1, 3), 0)), Grid(a, (Fraction(1, 2), 0)))
    assert same_lattice(a, Lattice([[2, 0], [0, 1]])) is None


def test_contains():
    y = Grid(identity_lattice(2), (Fraction(1, 3), Fraction(1, 2)))
    assert contains(y, (Fraction(4, 3), Fraction(-1, 2))) == (1, -1)
    assert contains(y, (0, 0)) is None


def test_tau_embed_shape():
    y = Grid(identity_lattice(2), (Fraction(1, 3), Fraction(1, 2)))
    tau = tau_embed(y)
    assert tau.dim == 3
    assert tau.column(2) == (Fraction(1, 3), Fraction(1, 2), 1)


@given(small_basis, st.data())
def test_enumeration_matches_brute_force(basis, data):
    d = len(basis)
    t = tuple(data.draw(shift) for _ in range(d))
    R = Fraction(data.draw(st.integers(1, 4)))
    y = Grid(Lattice(basis), t)
    ours = sorted(gv.value for gv in enumerate_grid_points(y, R))
    ref = sorted(u for _, u in oracles.grid_points(basis, y.t, R))
    assert ours == ref


@given(small_basis, st.data())
def test_grid_min_product_matches_brute_force(basis, data):
    d = len(basis)
    t = tuple(data.draw(shift) for _ in range(d))
    R = Fraction(data.draw(st.integers(1, 4)))
    y = Grid(Lattice(basis), t)
    mp = grid_min_product(y, R)
    ref = oracles.min_abs_product(basis, y.t, R)
    if ref is None:
        assert mp.vector is None
    else:
        assert mp.value == ref


@given(small_basis, st.data())
def test_slice_identity(basis, data):
    d = len(basis)
    t = tuple(data.draw(shift) for _ in range(d))
    n = data.draw(st.integers(1, 3))
    R = Fraction(data.draw(st.integers(n, 5)))
    y = Grid(Lattice(basis), t)
    lhs = tau_slice_min(y, n, R)
    mp = grid_min_product(scale_grid(y, n), R)
    rhs = None if mp.vector is None else n * mp.value
    assert lhs == rhs == oracles.tau_slice_brute(basis, y.t, n, R)


@given(st.integers(2, 3).flatmap(nonsingular))
def test_lll_reduce_same_lattice(basis):
    x = Lattice(basis)
    red, u = lll_reduce(x)
    assert abs(LA.det(u)) == 1
    assert same_lattice(red, x) is not None
    assert is_lll_reduced(red.columns())


@given(st.integers(2, 3).flatmap(nonsingular))
def test_shortest_vector_matches_brute_force(basis):
    sv = shortest_vector(Lattice(basis))
    assert sv.length.is_point()
    assert sv.length.lo == oracles.shortest_sup(basis)
    assert max(abs(c) for c in sv.vector) == sv.length.lo
    assert Lattice(basis).matvec(sv.coeffs) == sv.vector


def test_shortest_vector_algebraic_lattice():
    K = field_new((-1, -3, 0, 1))
    x = build_lattice(KLattice.power_basis(K))
    sv = shortest_vector(x)
    # the scaled lattice is unimodular; 1 in Z[alpha] embeds to (1, 1, 1)/81^(1/6)
    assert sv.length.hi < 1
    assert sv.length.width <= Fraction(1, 2**30)


def test_witness_search_rational_grid_reaches_zero():
    y = Grid(identity_lattice(2), (Fraction(1, 2), Fraction(1, 3)))
    res = littlewood_witness_search(y, 6, 10)
    assert res.is_zero
    # n = 2 already puts a coordinate of n*y on an integer
    assert res.witness.n == 2
    val, w = res.witness.recompute()
    assert val == 0 and w[-1] == 2


def test_witness_search_golden_grid_positive():
    K = field_new((-1, -1, 1))
    x = build_lattice(KLattice.power_basis(K))
    # an irrational grid never meets a coordinate hyperplane
    y = Grid(x, (Fraction(1, 2), Fraction(1, 3)))
    res = littlewood_witness_search(y, 4, 4)
    assert not res.is_zero
    val, _ = res.witness.recompute()
    assert val == res.bound
    sched = witness_schedule(y, 2, 2, 3)
    assert len(sched) == 3
    assert [r.R for r in sched] == [2, 4, 4]
