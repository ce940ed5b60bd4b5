"""Brute-force references that share no code with glclab's enumerators."""

import itertools
import math
from fractions import Fraction

import sympy


def inverse(basis):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in sympy.Matrix(basis).inv().tolist()]


def _vec(basis, c):
    d = len(basis)
    return [sum((basis[i][j] * c[j] for j in range(d)), Fraction(0)) for i in range(d)]


def _box(basis, v, R):
    """Integer m with ||B m + v||_inf <= R lie in this Cramer box."""
    inv = inverse(basis)
    out = []
    for row in inv:
        c = sum(x * y for x, y in zip(row, v))
        s = R * sum(abs(x) for x in row)
        out.append(range(math.floor(-s - c), math.ceil(s - c) + 1))
    return out


def grid_points(basis, t, R):
    """Every u = B(m + t) with ||u||_inf <= R, for a rational basis."""
    v = _vec(basis, t)
    red = sympy_reduced(basis)
    out = []
    for m in itertools.product(*_box(red, v, R)):
        u = tuple(a + b for a, b in zip(_vec(red, m), v))
        if max(abs(x) for x in u) <= R:
            out.append((m, u))
    return out


def min_abs_product(basis, t, R):
    best = None
    for _, u in grid_points(basis, t, R):
        p = abs(math.prod(u, start=Fraction(1)))
        if best is None or p < best:
            best = p
    return best


def tau_slice_brute(basis, t, n, R):
    """min |prod w| over w = (B m + n v, n) with sup-norm <= R, enumerated in
    d+1 coordinates directly."""
    if abs(n) > R:
        return None
    v = [n * x for x in _vec(basis, t)]
    red = sympy_reduced(basis)
    best = None
    for m in itertools.product(*_box(red, v, R)):
        w = [a + b for a, b in zip(_vec(red, m), v)]
        if max(abs(x) for x in w) > R:
            continue
        p = abs(math.prod(w, start=Fraction(1))) * abs(n)
        if best is None or p < best:
            best = p
    return best


def sympy_reduced(basis):
    """Same lattice (columns), LLL-reduced by sympy's own implementation."""
    from sympy.polys.matrices import DomainMatrix
    from sympy import ZZ

    den = math.lcm(*(Fraction(x).denominator for r in basis for x in r))
    rows = [[int(Fraction(basis[i][j]) * den) for i in range(len(basis))] for j in range(len(basis))]
    red = DomainMatrix(rows, (len(rows), len(rows)), ZZ).lll().to_Matrix().tolist()
    return [[Fraction(int(red[j][i]), den) for j in range(len(red))] for i in range(len(red))]


def shortest_sup(basis):
    """Minimal sup-norm of a nonzero lattice vector by exhaustive search over
    the full Cramer box of a sympy-reduced basis."""
    basis = sympy_reduced(basis)
    d = len(basis)
    L = min(max(abs(basis[i][j]) for i in range(d)) for j in range(d))
    inv = inverse(basis)
    spans = [L * sum(abs(x) for x in row) for row in inv]
    best = None
    for m in itertools.product(*[range(-math.floor(s), math.floor(s) + 1) for s in spans]):
        if not any(m):
            continue
        u = [sum((basis[i][j] * m[j] for j in range(d)), Fraction(0)) for i in range(d)]
        s = max(abs(x) for x in u)
        if best is None or s < best:
            best = s
    return best
