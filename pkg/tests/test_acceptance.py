"""Acceptance gate: one PASS/FAIL line per primary criterion.

Run with ``pytest tests/test_acceptance.py -v``; the lines are repeated in the
terminal summary.
"""

import itertools
import math
import random
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
from click.testing import CliRunner

from glclab.cli import main
from glclab.dynamics import central_ray, cone_ray_flow, stabilizer_check, unboundedness_report
from glclab.estimators import (
    PointCloud,
    box_dimension_estimate,
    classical_littlewood_scan,
    entropy_estimate,
    first_zero,
    separation_curve,
)
from glclab.estimators import fixtures as fx
from glclab.exact import linalg as LA
from glclab.exact.numfield import field_new, product_form
from glclab.lattice import Grid, Lattice, grid_equal, grid_min_product, scale_grid, shortest_vector
from glclab.lattice.core import identity_lattice
from glclab.lattice.witness import tau_slice_min
from glclab.dynamics import apply_diag
from glclab.manifest import RunManifest
from glclab.numberfield import (
    KLattice,
    build_lattice,
    find_units,
    fixed_grid_solve,
    id_conditions_check,
    rational_grid_fl_certificate,
    unit_to_diag,
    verify_unit,
)
from glclab.numberfield.units import certified_rank, cond1_for, log_vector

import oracles

RESULTS = []
CONFIGS = Path(__file__).resolve().parent.parent / "configs"
K3 = field_new((-1, -3, 0, 1))
ZA = KLattice.power_basis(K3)
A = K3.alpha


def report(name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def _fl_ok(x, t):
    y = Grid(x, t)
    cert = rational_grid_fl_certificate(y)
    if not cert.verify():
        return False
    # 0 in n*y, recomputed from scratch on the embedded basis
    w = x.matvec([m + cert.n * c for m, c in zip(cert.m, y.t)])
    if any(c != 0 for c in w) or product_form(w) != 0:
        return False
    lcm = math.lcm(*(c.denominator for c in y.t))
    return cert.n == lcm


def test_fl_certificate_suite():
    t0 = time.perf_counter()
    x = build_lattice(ZA)
    classes = list(itertools.product([Fraction(k, 8) for k in range(8)], repeat=3))
    bad = [t for t in classes if not _fl_ok(x, t)]
    fracs = sorted({Fraction(p, q) for q in range(1, 9) for p in range(q)})
    extra = [t for t in itertools.product(fracs, repeat=3) if any(c.denominator not in (1, 2, 4, 8) for c in t)]
    bad += [t for t in extra if not _fl_ok(x, t)]
    dt = time.perf_counter() - t0
    report(
        "FL-certificate suite",
        not bad and dt < 60,
        f"{len(classes)} classes k/8 and {len(extra)} further grids with denominators <= 8, "
        f"{len(bad)} failures, {dt:.1f}s (< 60s)",
    )


def test_unit_stabilizer_suite():
    r1, r2, sq = verify_unit(A, ZA), verify_unit(A - 2, ZA), verify_unit(A * A, ZA)
    f = lambda c: c**3 - 3 * c - 1  # noqa: E731
    derived = r1.norm == (-1) ** 3 * f(0) and r2.norm == (-1) ** 3 * f(2)
    a = unit_to_diag(sq)
    x = build_lattice(ZA)
    st = stabilizer_check(a, x)
    det_ok = st.M is not None and LA.bareiss_det(st.M) == 1
    exact_ok = st.M is not None and all(
        apply_diag(a, x).basis[i][j] == sum((x.basis[i][k] * st.M[k][j] for k in range(3)), Fraction(0))
        for i in range(3) for j in range(3)
    )
    us = find_units(ZA, 5)
    rank = certified_rank([log_vector(u.omega) for u in us])
    ok = (r1.ok and r1.norm == 1 and r2.ok and r2.norm == -1 and derived and sq.totally_positive is True
          and st.status == "yes" and det_ok and exact_ok and rank <= 2 and us.rank_upper <= 2)
    report(
        "Unit/stabilizer suite",
        ok,
        f"N(a)={r1.norm}, N(a-2)={r2.norm}, a^2 totally positive={sq.totally_positive}, "
        f"stabilizer {st.status} with det M={LA.bareiss_det(st.M) if st.M else None}, "
        f"{len(us.units)} units at height <= 5 with log rank {rank} <= 2",
    )


def test_id_conditions_suite():
    rep = id_conditions_check([A * A, (A - 2) ** 2], K3)
    controls = [cond1_for(K3.one), cond1_for(K3.rational(-1))]
    ok = (rep.cond1, rep.cond2, rep.cond3) == ("yes", "yes", "yes") and controls == ["no", "no"]
    report(
        "ID-conditions suite",
        ok,
        f"conditions (1)-(3) = {rep.cond1}/{rep.cond2}/{rep.cond3} for {{a^2, (a-2)^2}}; "
        f"condition (1) for omega=1, -1: {controls}",
    )


def test_fixed_grid_formula():
    rng = random.Random(20261015)
    rec = verify_unit(A * A, ZA)
    a = unit_to_diag(rec)
    x = build_lattice(ZA)
    fails = 0
    for _ in range(10):
        theta = ZA.element([rng.randint(-9, 9) for _ in range(3)])
        fg = fixed_grid_solve(rec, theta, ZA, x)
        ok = (
            fg.fixed
            and fg.grid.is_rational()
            and fg.eta * (A * A - 1) == theta
            and grid_equal(apply_diag(a, fg.grid), fg.grid)
            and fg.norm_bound % fg.denominator == 0
        )
        fails += not ok
    report("Fixed-grid formula", fails == 0, f"10 random theta in Lambda, {fails} grids not exactly fixed or not rational")


def test_slice_identity():
    rng = random.Random(7)
    fails = 0
    for _ in range(50):
        d = rng.choice([2, 3])
        while True:
            basis = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(d)] for _ in range(d)]
            if LA.det(basis) != 0:
                break
        t = tuple(Fraction(rng.randint(0, 5), 6) for _ in range(d))
        n = rng.randint(1, 5)
        R = Fraction(rng.randint(n, 10)) if d == 2 else Fraction(rng.randint(n, 6))
        y = Grid(Lattice(basis), t)
        lhs = oracles.tau_slice_brute(basis, y.t, n, R)
        inner = oracles.min_abs_product(basis, tuple(n * c for c in y.t), R)
        rhs = None if inner is None else n * inner
        mp = grid_min_product(scale_grid(y, n), R)
        lib = None if mp.vector is None else n * mp.value
        fails += not (lhs == rhs == tau_slice_min(y, n, R) == lib)
    report("Slice identity", fails == 0, f"50 random rational grids (d=2,3, R<=10, n<=5), {fails} disagreements")


def test_orbit_mechanism():
    grids = [
        Grid(identity_lattice(2), (Fraction(1, 2), Fraction(1, 3))),
        Grid(identity_lattice(2), (Fraction(2, 5), Fraction(1, 7))),
        Grid(Lattice([[2, 1], [0, 1]]), (Fraction(1, 4), Fraction(3, 4))),
        Grid(identity_lattice(3), (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))),
    ]
    fails = []
    for y in grids:
        d = y.dim
        traj = cone_ray_flow(y, central_ray(d), 12, 12)
        prev = None
        for k in range(1, 5):
            eps = Fraction(1, 2**k)
            ell = shortest_vector(y.lattice).length
            if not eps < ell.lo:
                continue
            recs = unboundedness_report(traj, eps)
            if not recs or not all(r.verify() and r.bound < eps ** (d + 1) * 1 for r in recs):
                fails.append((y.t, k))
                continue
            b = min(r.bound for r in recs)
            if prev is not None and b > prev:
                fails.append((y.t, k, "grew"))
            prev = b
    z = Grid(identity_lattice(2))
    traj = cone_ray_flow(z, central_ray(2), 6, 6)
    eps = Fraction(1, 2)
    recs = unboundedness_report(traj, eps)
    first_short = next(s.time for s in traj.samples if s.systole.hi < eps)
    control = bool(recs) and recs[0].time == first_short
    report(
        "Orbit mechanism",
        not fails and control,
        f"{len(grids)} rational grids along the central ray, eps = 2^-1..2^-4, {len(fails)} failures; "
        f"Z^2+0 first witness at t={recs[0].time if recs else None}, first short sample t={first_short}",
    )


def test_classical_scan_consistency():
    rng = random.Random(11)
    fails = 0
    for _ in range(20):
        a = Fraction(rng.randint(1, 29), rng.randint(2, 30))
        b = Fraction(rng.randint(1, 29), rng.randint(2, 30))
        cert = rational_grid_fl_certificate(Grid(identity_lattice(2), (a, b)))
        rows = classical_littlewood_scan(a, b, cert.n)
        fz = first_zero(rows)
        fails += not (rows[cert.n - 1].value == 0 and cert.verify() and fz is not None and fz <= cert.n)
    report("Classical scan consistency", fails == 0, f"20 random rational (alpha, beta), {fails} mismatches with the FL torsion order")


def test_estimator_calibration():
    out = []
    ok = True
    t = time.perf_counter()
    curve = separation_curve(PointCloud(fx.cantor_points(10)), fx.cantor_eps(2, 10))
    est = box_dimension_estimate(curve)
    dt = time.perf_counter() - t
    ok &= abs(est.value - math.log(2) / math.log(3)) < 0.05 and curve.sandwich_holds() and dt < 120
    out.append(f"Cantor {est.value:.4f} ({dt:.1f}s)")

    t = time.perf_counter()
    sq = PointCloud(fx.unit_square(10000, np.random.default_rng(0)), "torus")
    curve2 = separation_curve(sq, fx.geometric_eps(0.2, 1 / 30, 10))
    est2 = box_dimension_estimate(curve2)
    dt = time.perf_counter() - t
    ok &= abs(est2.value - 2) < 0.15 and curve2.sandwich_holds() and dt < 120
    out.append(f"square {est2.value:.4f} ({dt:.1f}s)")

    rng = np.random.default_rng(0)
    eps = [0.1, 0.03, 0.01, 1e-3]
    t = time.perf_counter()
    dbl = entropy_estimate(fx.doubling_map, PointCloud(rng.random(10000), "torus"), range(0, 11), eps, domain=(0.0, 1.0))
    dt = time.perf_counter() - t
    ok &= abs(dbl.value - math.log(2)) < 0.1 and dt < 120
    out.append(f"doubling {dbl.value:.4f} vs ln2 ({dt:.1f}s)")

    t = time.perf_counter()
    rot = entropy_estimate(fx.rotation(2**0.5 - 1), PointCloud(rng.random(10000), "torus"), range(0, 11), eps, domain=(0.0, 1.0))
    dt = time.perf_counter() - t
    ok &= rot.value <= 0.02 and dt < 120
    out.append(f"rotation {rot.value:.4f} ({dt:.1f}s)")
    out.append(f"sandwich holds on all rows: {curve.sandwich_holds() and curve2.sandwich_holds()}")
    report("Estimator calibration", bool(ok), "; ".join(out))


def test_shortest_vector_oracle():
    rng = random.Random(5)
    fails = 0
    for _ in range(100):
        d = rng.choice([2, 3])
        while True:
            basis = [[Fraction(rng.randint(-20, 20), rng.randint(1, 20)) for _ in range(d)] for _ in range(d)]
            if LA.det(basis) != 0:
                break
        sv = shortest_vector(Lattice(basis))
        fails += not (sv.length.is_point() and sv.length.lo == oracles.shortest_sup(basis))
    report("Shortest-vector oracle equivalence", fails == 0, f"100 random rational lattices (d=2,3), {fails} disagreements")


def test_determinism(tmp_path):
    runner = CliRunner()
    cases = [("scan", "scan_rational"), ("scan", "scan_golden"), ("orbit", "orbit"), ("nf", "nf_cubic")]
    bad = []
    for cmd, cfg in cases:
        first = tmp_path / f"{cfg}_w1"
        r = runner.invoke(main, [cmd, "--config", str(CONFIGS / f"{cfg}.yaml"), "--out-dir", str(first), "--workers", "1", "--seed", "3"])
        if r.exit_code != 0:
            bad.append((cfg, "run", r.exit_code))
            continue
        for w in ("1", "2"):
            again = runner.invoke(main, ["rerun", str(first / "manifest.json"), "--out-dir", str(tmp_path / f"{cfg}_re{w}"), "--workers", w])
            old = RunManifest.read(first / "manifest.json")
            new = RunManifest.read(tmp_path / f"{cfg}_re{w}" / "manifest.json")
            same_bytes = all(
                (first / o.path).read_bytes() == (tmp_path / f"{cfg}_re{w}" / o.path).read_bytes() for o in old.certified()
            )
            if again.exit_code != 0 or not same_bytes or not old.certified() or new.workers != int(w):
                bad.append((cfg, w))
    report("Determinism", not bad, f"{len(cases)} experiments re-run from their manifests at workers 1 and 2, mismatches: {bad or 'none'}")
