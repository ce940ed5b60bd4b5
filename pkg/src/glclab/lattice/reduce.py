"""Exact LLL reduction of rational lattice bases."""

from __future__ import annotations

from fractions import Fraction

from ..exact import linalg as LA
from .core import Lattice

DELTA = Fraction(3, 4)


def _dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def lll_columns(cols: list[list[Fraction]], delta: Fraction = DELTA) -> tuple[list[list[Fraction]], list[list[int]]]:
    """LLL-reduce a list of basis vectors.

    Returns (reduced vectors, T) where reduced[j] = sum_k T[k][j] * cols[k].
    """
    b = [list(map(Fraction, c)) for c in cols]
    n = len(b)
    t = [[int(i == j) for j in range(n)] for i in range(n)]  # column j: coefficients of b[j]

    def gso():
        bstar, mu, norms = [], [[Fraction(0)] * n for _ in range(n)], []
        for i in range(n):
            v = list(b[i])
            for j in range(i):
                mu[i][j] = _dot(b[i], bstar[j]) / norms[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            norms.append(_dot(v, v))
        return bstar, mu, norms

    bstar, mu, norms = gso()
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            q = round(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                for r in range(n):
                    t[r][k] -= q * t[r][j]
                for i in range(j + 1):
                    mu[k][i] -= q * (mu[j][i] if i < j else 1)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            for r in range(n):
                t[r][k], t[r][k - 1] = t[r][k - 1], t[r][k]
            bstar, mu, norms = gso()
            k = max(k - 1, 1)
    return b, t


def is_lll_reduced(cols, delta: Fraction = DELTA) -> bool:
    n = len(cols)
    bstar, norms = [], []
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        v = [Fraction(x) for x in cols[i]]
        for j in range(i):
            mu[i][j] = _dot(cols[i], bstar[j]) / norms[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        norms.append(_dot(v, v))
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    return all(norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1] for k in range(1, n))


def lll_reduce(x: Lattice, delta: Fraction = DELTA) -> tuple[Lattice, list[list[int]]]:
    """Reduced basis of the same lattice and the unimodular change of basis U
    (reduced = B * U), with det U = +-1 checked."""
    if not x.is_rational_unscaled():
        raise ValueError("LLL needs a rational basis")
    cols, u = lll_columns([list(c) for c in x.columns()], delta)
    if abs(LA.bareiss_det(u)) != 1:
        raise AssertionError("LLL transform is not unimodular")
    rows = [[cols[j][i] for j in range(x.dim)] for i in range(x.dim)]
    return Lattice(rows, x.scale, x.field_type, det_sq=x.det_sq(), check=False), u
