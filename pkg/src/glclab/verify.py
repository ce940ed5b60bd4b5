"""Serialized certificates and their standalone re-verification.

Each checker recomputes everything from the stored inputs and reports the
first invariant that fails.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dynamics import _below, apply_diag
from .exact import linalg as LA
from .exact.numfield import FieldElement, embedded, field_new, product_form, scalar_from_json, scalar_to_json
from .exact.rational import format_rational, parse_rational
from .lattice.core import Grid, grid_equal, tau_embed
from .lattice.io import grid_from_json, grid_to_json, value_from_json
from .numberfield.construct import FLCertificate, build_lattice, unit_to_diag
from .numberfield.klattice import KLattice
from .numberfield.units import UnitRecord, verify_unit


class VerificationFailure(Exception):
    def __init__(self, invariant: str, message: str = ""):
        super().__init__(message or invariant)
        self.invariant = invariant
        self.message = message


@dataclass
class VerifyResult:
    kind: str
    ok: bool
    invariant: str | None = None
    message: str = ""


# -- serialization of number-field certificates --------------------------------

def _elem_json(x: FieldElement) -> list:
    return [format_rational(c) for c in x.coords]


def _klattice_json(lam: KLattice) -> list:
    return [_elem_json(b) for b in lam.basis]


def _field_lattice(d: dict) -> tuple:
    K = field_new(d["field"])
    lam = KLattice.from_coords(K, [[parse_rational(str(c)) for c in v] for v in d["lattice"]])
    return K, lam


def unit_to_json(rec: UnitRecord, lam: KLattice) -> dict:
    return {
        "kind": "unit",
        "field": list(lam.field.poly.coeffs),
        "lattice": _klattice_json(lam),
        "omega": _elem_json(rec.omega),
        "norm": format_rational(rec.norm),
        "M": [[int(x) for x in r] for r in rec.M],
        "totally_positive": rec.totally_positive,
    }


def stabilizer_to_json(rec: UnitRecord, lam: KLattice, M) -> dict:
    return {
        "kind": "stabilizer",
        "field": list(lam.field.poly.coeffs),
        "lattice": _klattice_json(lam),
        "omega": _elem_json(rec.omega),
        "M": [[int(x) for x in r] for r in M],
    }


def fixed_grid_to_json(rec: UnitRecord, theta: FieldElement, lam: KLattice, grid: Grid) -> dict:
    return {
        "kind": "fixed_grid",
        "field": list(lam.field.poly.coeffs),
        "lattice": _klattice_json(lam),
        "omega": _elem_json(rec.omega),
        "theta": _elem_json(theta),
        "t": [scalar_to_json(c) for c in grid.t],
    }


def fl_to_json(cert: FLCertificate) -> dict:
    return {"kind": "fl", "grid": grid_to_json(cert.grid), **cert.to_json()}


# -- checkers ------------------------------------------------------------------

def _require(cond: bool, invariant: str, message: str = ""):
    if not cond:
        raise VerificationFailure(invariant, message)


def _check_witness(d: dict):
    y = grid_from_json(d["grid"])
    m = [int(c) for c in d["m"]]
    n = int(d["n"])
    _require(n != 0, "last_coordinate_nonzero")
    tau = tau_embed(y)
    w = tau.matvec(m + [n])
    stored = [scalar_from_json(c) for c in d["w"]]
    _require(list(w) == stored, "w_matches_coefficients", "tau basis times (m, n) differs from stored w")
    _require(w[-1] == n, "last_coordinate_nonzero")
    val = abs(product_form(w))
    _require(val == value_from_json(d["bound"]), "bound_matches_product", f"recomputed {val}")
    _require(parse_rational(d["covol_sq"]) == y.lattice.covol_sq_total(), "covolume_normalization")


def _check_orbit_witness(d: dict):
    y = grid_from_json(d["grid"])
    coeffs = [int(c) for c in d["coeffs"]]
    tau = tau_embed(y)
    w = tau.matvec(coeffs)
    stored = [scalar_from_json(c) for c in d["w"]]
    _require(list(w) == stored, "w_matches_coefficients")
    _require(w[-1] != 0, "last_coordinate_nonzero")
    val = abs(product_form(w))
    _require(val == value_from_json(d["bound"]), "bound_matches_product", f"recomputed {val}")
    covol = parse_rational(d["covol_sq"])
    _require(covol == tau.covol_sq_total(), "covolume_normalization")
    _require(_below(val, parse_rational(d["eps"]), len(w), covol), "below_eps_power")


def _check_unit(d: dict):
    K, lam = _field_lattice(d)
    omega = K.element([parse_rational(str(c)) for c in d["omega"]])
    nrm = omega.norm()
    _require(nrm == parse_rational(str(d["norm"])), "norm", f"recomputed norm {nrm}")
    _require(nrm in (1, -1), "norm", f"norm {nrm} is not +-1")
    M = [[int(x) for x in r] for r in d["M"]]
    mm = lam.mult_matrix(omega)
    _require(LA.is_integral(mm), "M_integral")
    _require([[Fraction(x) for x in r] for r in M] == mm, "M_matches_multiplication", "stored M is not the matrix of x -> omega*x")
    _require(LA.det(M) == nrm, "det_M", f"det M = {LA.det(M)}")
    rec = verify_unit(omega, lam)
    _require(rec.totally_positive == d.get("totally_positive"), "total_positivity", f"recomputed {rec.totally_positive}")


def _check_stabilizer(d: dict):
    K, lam = _field_lattice(d)
    omega = K.element([parse_rational(str(c)) for c in d["omega"]])
    M = [[int(x) for x in r] for r in d["M"]]
    _require(LA.det(M) in (1, -1), "det_M_unimodular", f"det M = {LA.det(M)}")
    x = build_lattice(lam)
    a = [embedded(omega, i) for i in range(K.degree)]
    B = x.basis
    d_ = K.degree
    for i in range(d_):
        for j in range(d_):
            lhs = a[i] * B[i][j]
            rhs = Fraction(0)
            for k in range(d_):
                if M[k][j]:
                    rhs = rhs + B[i][k] * M[k][j]
            _require(lhs == rhs, "aB_equals_BM", f"entry ({i}, {j})")


def _check_fixed_grid(d: dict):
    K, lam = _field_lattice(d)
    omega = K.element([parse_rational(str(c)) for c in d["omega"]])
    theta = K.element([parse_rational(str(c)) for c in d["theta"]])
    _require(omega != K.one, "omega_not_one")
    eta = theta * (omega - 1).inverse()
    t = lam.coords_of(eta)
    stored = [scalar_from_json(c) for c in d["t"]]
    _require(all((a - b).denominator == 1 for a, b in zip(t, stored)), "translation_formula", "t differs from coordinates of theta/(omega-1)")
    rec = verify_unit(omega, lam)
    _require(rec.ok, "unit", rec.failure or "")
    x = build_lattice(lam)
    y = Grid(x, tuple(stored))
    _require(grid_equal(apply_diag(unit_to_diag(rec), y), y), "fixed_by_unit")
    _require(y.is_rational(), "rational_grid")


def _check_fl(d: dict):
    y = grid_from_json(d["grid"])
    n = int(d["n"])
    m = tuple(int(c) for c in d["m"])
    _require(n >= 1, "n_positive")
    _require(y.is_rational(), "rational_translation")
    cert = FLCertificate(y, n, m, d.get("minimality", "unclaimed"))
    _require(cert.verify(), "zero_in_ny", "B(m + n t) is not exactly 0")


CHECKERS = {
    "witness": _check_witness,
    "orbit_witness": _check_orbit_witness,
    "unit": _check_unit,
    "stabilizer": _check_stabilizer,
    "fixed_grid": _check_fixed_grid,
    "fl": _check_fl,
}


def verify_record(d: dict) -> VerifyResult:
    kind = d.get("kind")
    if kind not in CHECKERS:
        return VerifyResult(str(kind), False, "known_kind", f"unknown record kind {kind!r}")
    try:
        CHECKERS[kind](d)
    except VerificationFailure as e:
        return VerifyResult(kind, False, e.invariant, e.message)
    except (KeyError, TypeError, ValueError) as e:
        return VerifyResult(kind, False, "well_formed", f"{type(e).__name__}: {e}")
    return VerifyResult(kind, True)


def load_records(path: str | Path) -> list[dict]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, list):
        return data
    if isinstance(data, dict) and "records" in data:
        return list(data["records"])
    return [data]


def verify_file(path: str | Path) -> list[VerifyResult]:
    return [verify_record(r) for r in load_records(path)]
