from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from glclab.dynamics import (
    DiagonalElement,
    PreconditionError,
    apply_diag,
    central_ray,
    check_ray,
    cone_ray_flow,
    stabilizer_check,
    threshold_schedule,
    unboundedness_report,
)
from glclab.lattice import Grid, Lattice, same_lattice
from glclab.lattice.core import identity_lattice, tau_embed

logs = st.lists(st.integers(-4, 4), min_size=2, max_size=4).map(lambda t: t + [-sum(t)])


def test_diagonal_element_validation():
    with pytest.raises(ValueError):
        DiagonalElement([2, 2])
    with pytest.raises(ValueError):
        DiagonalElement([-1, -1])
    with pytest.raises(ValueError):
        DiagonalElement.from_log([1, 1])
    with pytest.raises(ValueError):
        DiagonalElement.from_log([Fraction(1, 2), Fraction(-1, 2)])
    a = DiagonalElement.from_log([1, 2, -3])
    assert a.entries == (2, 4, Fraction(1, 8))


@given(logs, st.data())
def test_group_action(t, data):
    s = data.draw(st.lists(st.integers(-3, 3), min_size=len(t) - 1, max_size=len(t) - 1).map(lambda u: u + [-sum(u)]))
    a, b = DiagonalElement.from_log(t), DiagonalElement.from_log(s)
    x = Lattice([[1 if i == j else (1 if j == i + 1 else 0) for j in range(len(t))] for i in range(len(t))])
    assert same_lattice(apply_diag(a * b, x), apply_diag(a, apply_diag(b, x))) is not None
    assert apply_diag(a, x).det_sq() == x.det_sq()
    assert a * a.inverse() == DiagonalElement.identity(len(t))


def test_dimension_mismatch_refused():
    with pytest.raises(ValueError, match="dimension mismatch"):
        apply_diag(DiagonalElement.from_log([1, -1]), identity_lattice(3))


def test_stabilizer_of_z2():
    assert stabilizer_check(DiagonalElement.identity(2), identity_lattice(2)).status == "yes"
    assert stabilizer_check(DiagonalElement.from_log([1, -1]), identity_lattice(2)).status == "no"


def test_rays():
    assert central_ray(2) == (1, 1, -2)
    with pytest.raises(ValueError):
        check_ray([1, 0, -1])
    with pytest.raises(ValueError):
        check_ray([1, 1, -1])


def test_flow_systoles():
    y = Grid(identity_lattice(2), (Fraction(1, 3), Fraction(1, 5)))
    traj = cone_ray_flow(y, central_ray(2), 4, 4)
    assert traj.times == [0, 1, 2, 3, 4]
    assert all(s.systole.is_point() for s in traj.samples)
    # every nonzero vector of tau(y) has a coordinate of size >= 1 at time 0
    assert traj.samples[0].systole.lo == 1
    # (1/3, 1/5, 1) sits in tau(y); under a_s its sup norm is max(2^s/3, 4^-s)
    tau = tau_embed(y)
    assert tau.matvec((0, 0, 1)) == (Fraction(1, 3), Fraction(1, 5), 1)
    assert traj.samples[1].systole.lo <= Fraction(2, 3)


def test_unboundedness_rational_grid():
    y = Grid(identity_lattice(2), (Fraction(1, 2), Fraction(1, 3)))
    traj = cone_ray_flow(y, central_ray(2), 6, 6)
    eps = Fraction(1, 2)
    recs = unboundedness_report(traj, eps)
    assert recs
    for r in recs:
        assert r.verify()
        assert r.n > 0
        assert r.bound < eps**3


def test_unboundedness_needs_eps_below_systole():
    y = Grid(identity_lattice(2))
    traj = cone_ray_flow(y, central_ray(2), 2, 2)
    with pytest.raises(PreconditionError):
        unboundedness_report(traj, 1)


def test_zero_grid_first_witness_at_first_short_sample():
    y = Grid(identity_lattice(2))
    traj = cone_ray_flow(y, central_ray(2), 4, 4)
    eps = Fraction(1, 2)
    recs = unboundedness_report(traj, eps)
    first_short = next(s.time for s in traj.samples if s.systole.hi < eps)
    assert recs[0].time == first_short
    assert recs[0].bound == 0


def test_threshold_schedule_shrinks():
    y = Grid(identity_lattice(2), (Fraction(1, 2), Fraction(1, 2)))
    traj = cone_ray_flow(y, central_ray(2), 6, 6)
    sched = threshold_schedule(traj, 3)
    assert [k for k, _ in sched] == [1, 2, 3]
    for k, rec in sched:
        if rec is not None:
            assert rec.bound < Fraction(1, 2**k) ** 3
