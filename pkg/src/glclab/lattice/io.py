"""JSON forms of scalars, lattices, grids and search records.

Rationals are strings like "3/4"; irrational entries are
{"field": [c0, ..., 1], "root": i, "coords": [...]}.
"""

from __future__ import annotations

from fractions import Fraction

from ..exact.interval import RealInterval
from ..exact.numfield import Embedded, ProductValue, field_new, scalar_from_json, scalar_to_json
from ..exact.rational import format_rational, parse_rational
from .core import Grid, Lattice, ScaleGroup


def value_to_json(v):
    if v is None:
        return None
    if isinstance(v, ProductValue):
        return {"product": v.to_json()}
    if isinstance(v, RealInterval):
        return {"interval": v.to_json()}
    return scalar_to_json(v)


def value_from_json(x):
    if x is None:
        return None
    if isinstance(x, dict) and "product" in x:
        p = x["product"]
        return ProductValue(parse_rational(p["rational"]), tuple(scalar_from_json(f) for f in p["factors"]))
    if isinstance(x, dict) and "interval" in x:
        lo, hi = x["interval"]
        return RealInterval(parse_rational(lo), parse_rational(hi))
    return scalar_from_json(x)


def lattice_to_json(x: Lattice) -> dict:
    return {
        "basis": [[scalar_to_json(c) for c in r] for r in x.basis],
        "scale": [{"rows": list(g.rows), "covol_sq": format_rational(g.covol_sq)} for g in x.scale],
        "field_type": None if x.field_type is None else list(x.field_type.poly.coeffs),
        "det_sq": None if x.det_sq() is None else format_rational(x.det_sq()),
    }


def lattice_from_json(d: dict) -> Lattice:
    """Explicit basis form, or {"field": {"poly": [...]}, "klattice": [[coords], ...]}."""
    if "klattice" in d or ("field" in d and "basis" not in d):
        from ..numberfield.construct import build_lattice
        from ..numberfield.klattice import KLattice

        K = field_new(d["field"]["poly"])
        coords = d.get("klattice")
        lam = KLattice.power_basis(K) if coords is None else KLattice.from_coords(K, [[parse_rational(str(c)) for c in v] for v in coords])
        return build_lattice(lam)
    basis = [[scalar_from_json(c) for c in r] for r in d["basis"]]
    scale = [ScaleGroup(tuple(g["rows"]), parse_rational(str(g["covol_sq"]))) for g in d.get("scale", [])]
    ft = d.get("field_type")
    ft = field_new(ft) if ft is not None else None
    det_sq = d.get("det_sq")
    det_sq = parse_rational(str(det_sq)) if det_sq is not None else None
    return Lattice(basis, scale, field_type=ft, det_sq=det_sq)


def grid_to_json(y: Grid) -> dict:
    return {"lattice": lattice_to_json(y.lattice), "t": [scalar_to_json(c) for c in y.t]}


def grid_from_json(d: dict) -> Grid:
    lat = lattice_from_json(d["lattice"])
    t = d.get("t")
    if t is None:
        return Grid(lat)
    return Grid(lat, tuple(scalar_from_json(c) for c in t))


def witness_to_json(rec) -> dict:
    return {
        "kind": "witness",
        "grid": grid_to_json(rec.grid),
        "m": [int(c) for c in rec.m],
        "n": int(rec.n),
        "w": [scalar_to_json(c) for c in rec.w],
        "bound": value_to_json(rec.bound),
        "covol_sq": format_rational(rec.covol_sq),
        "R": format_rational(rec.R),
        "n_max": rec.n_max,
        "tie_flag": rec.tie_flag,
        "config_hash": rec.config_hash,
    }


def orbit_witness_to_json(rec) -> dict:
    return {
        "kind": "orbit_witness",
        "grid": grid_to_json(rec.grid),
        "time": format_rational(rec.time),
        "eps": format_rational(rec.eps),
        "coeffs": [int(c) for c in rec.coeffs],
        "w": [scalar_to_json(c) for c in rec.w],
        "bound": value_to_json(rec.bound),
        "covol_sq": format_rational(rec.covol_sq),
    }


def is_zero_value(v) -> bool:
    return isinstance(v, Fraction) and v == 0


def float_of(v) -> float:
    if isinstance(v, (Fraction, Embedded, ProductValue, RealInterval)):
        return float(v)
    return float("nan")
