"""Named experiments behind the CLI. Each returns the files it wrote as
(relative path, certified) pairs plus an exit status."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .dynamics import central_ray, check_ray, cone_ray_flow, threshold_schedule, unboundedness_report
from .estimators import fixtures as fx
from .estimators.entropy import entropy_estimate
from .estimators.separation import PointCloud, box_dimension_estimate, separation_curve
from .exact.numfield import field_new, interval_of
from .exact.rational import format_rational, parse_rational
from .lattice.io import grid_from_json, orbit_witness_to_json, value_to_json, witness_to_json
from .lattice.witness import witness_schedule
from .numberfield.construct import (
    build_lattice,
    fixed_grid_solve,
    rational_grid_fl_certificate,
    require_totally_real,
    unit_stabilizer,
)
from .numberfield.klattice import KLattice, order_of
from .numberfield.units import find_units, id_conditions_check, verify_unit
from .lattice.core import Grid
from .verify import fixed_grid_to_json, fl_to_json, stabilizer_to_json, unit_to_json

EXIT_OK = 0
EXIT_PRECISION = 4


@dataclass
class RunContext:
    out_dir: Path
    workers: int = 1
    seed: int = 0
    config_hash: str = ""


def _rat(x) -> Fraction:
    return parse_rational(str(x))


def write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def _bounds(v, bits: int = 64) -> tuple[str, str]:
    if v is None:
        return "", ""
    iv = interval_of(v, Fraction(1, 2 ** (bits + 8)))
    if not iv.is_point():
        iv = iv.round_outward(bits)
    return format_rational(iv.lo), format_rational(iv.hi)


# -- scan ----------------------------------------------------------------------

def run_scan(cfg: dict, ctx: RunContext):
    R = _rat(cfg["R"])
    n_max = int(cfg["n_max"])
    rounds = int(cfg.get("rounds", 1))
    records = []
    flagged = False
    csv_path = ctx.out_dir / "scan.csv"
    with csv_path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["grid", "round", "R", "n_max", "n", "bound", "bound_lo", "bound_hi", "is_zero", "tie_flag", "witness_ref"])
        for gi, gspec in enumerate(cfg["grids"]):
            y = grid_from_json(gspec)
            for k, rec in enumerate(witness_schedule(y, R, n_max, rounds, ctx.workers)):
                res = rec.result
                flagged = flagged or res.tie_flag
                ref = ""
                if res.witness is not None:
                    res.witness.config_hash = ctx.config_hash
                    ref = f"witnesses.json#{len(records)}"
                    records.append(witness_to_json(res.witness))
                lo, hi = _bounds(res.bound)
                w.writerow([
                    gi, k, format_rational(rec.R), rec.n_max,
                    "" if res.witness is None else res.witness.n,
                    json.dumps(value_to_json(res.bound), sort_keys=True), lo, hi,
                    int(res.is_zero), int(res.tie_flag), ref,
                ])
                fh.flush()
    write_json(ctx.out_dir / "witnesses.json", {"records": records})
    return [("scan.csv", True), ("witnesses.json", True)], (EXIT_PRECISION if flagged else EXIT_OK)


# -- orbit ---------------------------------------------------------------------

def run_orbit(cfg: dict, ctx: RunContext):
    t_max = _rat(cfg["t_max"])
    steps = int(cfg["steps"])
    base = _rat(cfg.get("base", 2))
    k_max = int(cfg.get("k_max", 8))
    outputs = []
    witnesses = []
    report = []
    flagged = False
    for gi, gspec in enumerate(cfg["grids"]):
        y = grid_from_json(gspec)
        rays = [check_ray([_rat(c) for c in r]) for r in cfg["rays"]] if "rays" in cfg else [central_ray(y.dim)]
        for ri, ray in enumerate(rays):
            traj = cone_ray_flow(y, ray, t_max, steps, base)
            flagged = flagged or any(s.flagged for s in traj.samples)
            sched = threshold_schedule(traj, k_max)
            # finest threshold each sample passes, and its witness
            per_sample = {}
            for k, _ in sched:
                eps = Fraction(1, 2**k)
                for ow in unboundedness_report(traj, eps):
                    per_sample[ow.time] = ow
            name = f"trajectory_{gi}_{ri}.csv"
            with (ctx.out_dir / name).open("w", newline="") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["t", "systole_lo", "systole_hi", "witness_bound", "witness_json_ref"])
                for smp in traj.samples:
                    lo, hi = _bounds(smp.systole)
                    ow = per_sample.get(smp.time)
                    ref, bound = "", ""
                    if ow is not None:
                        ref = f"orbit_witnesses.json#{len(witnesses)}"
                        bound = json.dumps(value_to_json(ow.bound), sort_keys=True)
                        witnesses.append(orbit_witness_to_json(ow))
                    w.writerow([format_rational(smp.time), lo, hi, bound, ref])
            outputs.append((name, True))
            report.append({
                "grid": gi,
                "ray": [format_rational(c) for c in ray],
                "schedule": [
                    {
                        "k": k,
                        "eps": format_rational(Fraction(1, 2**k)),
                        "first_time": None if ow is None else format_rational(ow.time),
                        "bound": None if ow is None else value_to_json(ow.bound),
                    }
                    for k, ow in sched
                ],
            })
    write_json(ctx.out_dir / "orbit_witnesses.json", {"records": witnesses})
    write_json(ctx.out_dir / "orbit_report.json", {"runs": report})
    outputs += [("orbit_witnesses.json", True), ("orbit_report.json", True)]
    return outputs, (EXIT_PRECISION if flagged else EXIT_OK)


# -- number fields -------------------------------------------------------------

def _unit_height(w) -> tuple:
    return (max(max(abs(c.numerator), c.denominator) for c in w.coords), w.coords)


def _fl_classes(den: int, d: int, mode: str):
    import itertools

    if mode == "multiples":
        vals = [Fraction(k, den) for k in range(den)]
    else:
        vals = sorted({Fraction(p, q) for q in range(1, den + 1) for p in range(q)})
    return itertools.product(vals, repeat=d)


def run_nf(cfg: dict, ctx: RunContext):
    K = field_new(cfg["field"]["poly"])
    report = {
        "field": {
            "poly": list(K.poly.coeffs),
            "degree": K.degree,
            "irreducibility": K.irreducibility,
            "totally_real": K.totally_real,
            "real_roots": [r.refine(Fraction(1, 2**40)).to_json() for r in K.roots],
            "discriminant": format_rational(K.discriminant()),
        }
    }
    outputs = [("nf_report.json", True)]
    if not K.totally_real:
        report["refused"] = "field is not totally real; lattice constructions are not defined"
        write_json(ctx.out_dir / "nf_report.json", report)
        require_totally_real(K)
    lam = KLattice.power_basis(K) if "lattice" not in cfg else KLattice.from_coords(K, [[_rat(c) for c in v] for v in cfg["lattice"]])
    od = order_of(lam)
    report["order"] = {"basis": [b.to_json() for b in od.order.basis], "certified": od.certified}
    x = build_lattice(lam)
    report["x_lambda"] = {"covol_sq": format_rational(x.covol_sq_total()), "det_sq": format_rational(x.det_sq())}

    search = find_units(lam, int(cfg.get("height", 3)), ctx.workers)
    units = list(search.units)
    for v in cfg.get("units", []):
        rec = verify_unit(K.element([_rat(c) for c in v]), lam)
        if not rec.ok:
            raise ValueError(f"supplied unit {v} fails verification: {rec.failure}")
        units.append(rec)
    report["units"] = {
        "height": search.height,
        "found": len(search.units),
        "rank_lower": search.rank_lower,
        "rank_upper": search.rank_upper,
    }
    # totally positive units: squares of the others
    tp = {}
    for rec in units:
        w = rec.omega
        if w.is_rational():
            continue
        if rec.totally_positive is not True:
            rec = verify_unit(w * w, lam)
        if rec.ok and rec.totally_positive:
            tp[rec.omega.coords] = rec
    tp_units = sorted(tp.values(), key=lambda r: _unit_height(r.omega))[:6]
    unit_records = [unit_to_json(r, lam) for r in units]
    stab_records = []
    for rec in tp_units:
        sc = unit_stabilizer(rec, lam, x)
        if sc.status != "yes" or not sc.matches_unit:
            raise AssertionError(f"stabilizer certificate failed for {rec.omega!r}")
        stab_records.append(stabilizer_to_json(rec, lam, sc.M))
    write_json(ctx.out_dir / "units.json", {"records": unit_records + stab_records})
    outputs.append(("units.json", True))

    idr = id_conditions_check(tp_units, K) if tp_units else None
    report["id_conditions"] = None if idr is None else idr.to_json()

    fixed, fl = [], []
    if tp_units:
        omega = next((r for r in tp_units if idr and idr.cond1_witness == r.omega), tp_units[0])
        thetas = [K.element([_rat(c) for c in v]) for v in cfg.get("thetas", [])]
        rng = np.random.default_rng(ctx.seed)
        span = int(cfg.get("theta_range", 5))
        for _ in range(int(cfg.get("random_thetas", 0))):
            thetas.append(lam.element([int(c) for c in rng.integers(-span, span + 1, size=K.degree)]))
        for th in thetas:
            fg = fixed_grid_solve(omega, th, lam, x)
            fixed.append(fixed_grid_to_json(omega, th, lam, fg.grid))
            fl.append(fl_to_json(rational_grid_fl_certificate(fg.grid)))
        report["fixed_grids"] = {"omega": omega.omega.to_json(), "count": len(fixed)}
    if "fl" in cfg:
        den = int(cfg["fl"]["denominator"])
        mode = cfg["fl"].get("mode", "multiples")
        n = 0
        for t in _fl_classes(den, K.degree, mode):
            fl.append(fl_to_json(rational_grid_fl_certificate(Grid(x, t))))
            n += 1
        report["fl_suite"] = {"denominator": den, "mode": mode, "classes": n}
    write_json(ctx.out_dir / "fixed_grids.json", {"records": fixed})
    write_json(ctx.out_dir / "fl_certificates.json", {"records": fl})
    outputs += [("fixed_grids.json", True), ("fl_certificates.json", True)]
    report["gfl_claim"] = bool(idr and idr.gfl_claim)
    write_json(ctx.out_dir / "nf_report.json", report)
    return outputs, EXIT_OK


# -- estimators ----------------------------------------------------------------

def _eps_list(eps) -> list[float]:
    if isinstance(eps, dict):
        return fx.geometric_eps(eps["max"], eps["min"], eps["rows"])
    return [float(e) for e in eps]


def run_dim(cfg: dict, ctx: RunContext):
    rng = np.random.default_rng(ctx.seed)
    fixture = cfg["fixture"]
    if fixture == "cantor":
        cloud = PointCloud(fx.cantor_points(int(cfg.get("depth", 10))), cfg.get("metric", "euclidean"))
    elif fixture == "square":
        cloud = PointCloud(fx.unit_square(int(cfg.get("n_points", 10000)), rng), cfg.get("metric", "torus"))
    else:
        cloud = PointCloud(np.array(cfg["points"], dtype=float), cfg["metric"])
    curve = separation_curve(cloud, _eps_list(cfg["eps"]), covers=bool(cfg.get("covers", True)))
    est = box_dimension_estimate(curve, cfg.get("drop_large", 0.25), cfg.get("drop_small", 0.10))
    with (ctx.out_dir / "curve.csv").open("w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(curve.to_csv_rows())
    write_json(ctx.out_dir / "dim.json", {
        "label": est.label,
        "estimate": est.value,
        "band": est.band,
        "window": list(est.window),
        "degenerate": est.degenerate,
        "fit_window": {"drop_large": cfg.get("drop_large", 0.25), "drop_small": cfg.get("drop_small", 0.10)},
        "sandwich_holds": curve.sandwich_holds() if cfg.get("covers", True) else None,
        "points": len(cloud),
    })
    return [("curve.csv", False), ("dim.json", False)], EXIT_OK


def run_entropy(cfg: dict, ctx: RunContext):
    rng = np.random.default_rng(ctx.seed)
    maps = {"identity": fx.identity_map, "doubling": fx.doubling_map}
    step = fx.rotation(float(cfg.get("rotation", 2**0.5 - 1))) if cfg["map"] == "rotation" else maps[cfg["map"]]
    pts = rng.random(int(cfg.get("n_points", 10000)))
    cloud = PointCloud(pts, cfg.get("metric", "torus"))
    lo, hi = cfg["n_range"]
    est = entropy_estimate(step, cloud, range(lo, hi + 1), [float(e) for e in cfg["eps"]], domain=(0.0, 1.0))
    write_json(ctx.out_dir / "entropy.json", {
        "label": est.label,
        "estimate": est.value,
        "per_eps": {repr(k): {"slope": v[0], "n_used": v[1]} for k, v in est.per_eps.items()},
        "counts": {repr(k): v for k, v in est.counts.items()},
        "exited": est.exited,
        "notes": est.notes,
    })
    return [("entropy.json", False)], EXIT_OK


RUNNERS = {"scan": run_scan, "orbit": run_orbit, "nf": run_nf, "dim": run_dim, "entropy": run_entropy}
