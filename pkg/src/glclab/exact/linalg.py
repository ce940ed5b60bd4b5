"""Exact linear algebra over Z and Q: Bareiss determinants, Gaussian solves,
inverses and the Hermite normal form with its unimodular transform."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(r) for r in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), 0) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), 0) for row in a]


def bareiss_det(a: Sequence[Sequence[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def det(a: Sequence[Sequence]) -> Fraction:
    """Determinant of a rational matrix."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    from .rational import common_denominator

    den = common_denominator(x for r in a for x in r)
    ints = [[int(Fraction(x) * den) for x in r] for r in a]
    return Fraction(bareiss_det(ints), den**n)


def rref(a: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form over Q and pivot columns."""
    m = [[Fraction(x) for x in r] for r in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        pv = m[r][c]
        if pv != 1:
            m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1]) if a else 0


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix | None:
    """Solve a·x = b (b has one column per right-hand side).

    ``a`` may be overdetermined. Returns None when the system is
    inconsistent; raises if the solution is not unique.
    """
    rows = len(a)
    n = len(a[0])
    k = len(b[0])
    aug = [list(a[i]) + list(b[i]) for i in range(rows)]
    m, pivots = rref(aug)
    if any(p >= n for p in pivots):
        return None
    if len(pivots) < n:
        raise ValueError("singular system: solution not unique")
    x = [[Fraction(0)] * k for _ in range(n)]
    for r, c in enumerate(pivots):
        x[c] = m[r][n:]
    return x


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    x = solve(a, identity(n))
    if x is None:
        raise ZeroDivisionError("singular matrix")
    return x


def is_integral(a: Sequence[Sequence]) -> bool:
    return all(Fraction(x).denominator == 1 for r in a for x in r)


def to_int(a: Sequence[Sequence]) -> list[list[int]]:
    return [[int(x) for x in r] for r in a]


def hnf_columns(a: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite normal form of a nonsingular square integer matrix.

    Returns (H, U) with H = A·U, U unimodular and H lower triangular with
    positive diagonal and 0 <= H[i][j] < H[i][i] for j < i.
    """
    n = len(a)
    h = [list(map(int, r)) for r in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j, k, q):  # col_j -= q * col_k
        if q:
            for r in h:
                r[j] -= q * r[k]
            for r in u:
                r[j] -= q * r[k]

    def swap(j, k):
        for r in h:
            r[j], r[k] = r[k], r[j]
        for r in u:
            r[j], r[k] = r[k], r[j]

    for i in range(n):
        # eliminate entries right of the diagonal in row i
        while True:
            nz = [j for j in range(i, n) if h[i][j] != 0]
            if not nz:
                raise ValueError("singular matrix has no full-rank HNF")
            piv = min(nz, key=lambda j: abs(h[i][j]))
            if piv != i:
                swap(i, piv)
            done = True
            for j in range(i + 1, n):
                if h[i][j]:
                    colop(j, i, h[i][j] // h[i][i])
                    if h[i][j]:
                        done = False
            if done:
                break
        if h[i][i] < 0:
            for r in h:
                r[i] = -r[i]
            for r in u:
                r[i] = -r[i]
        for j in range(i):
            colop(j, i, h[i][j] // h[i][i])
    return h, u


def hnf_rational(a: Sequence[Sequence]) -> tuple[int, list[list[int]]]:
    """Canonical form of the lattice spanned by the columns of a rational
    matrix: (common denominator D, HNF of D·A)."""
    from .rational import common_denominator

    den = common_denominator(x for r in a for x in r)
    ints = [[int(Fraction(x) * den) for x in r] for r in a]
    return den, hnf_columns(ints)[0]


def same_column_lattice(a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    """Do the columns of two nonsingular rational matrices span one lattice?"""
    from .rational import common_denominator

    den = common_denominator([x for r in a for x in r] + [x for r in b for x in r])
    ha = hnf_columns([[int(Fraction(x) * den) for x in r] for r in a])[0]
    hb = hnf_columns([[int(Fraction(x) * den) for x in r] for r in b])[0]
    return ha == hb


def lattice_basis(vectors: Sequence[Sequence[int]]) -> list[list[int]]:
    """HNF basis (as rows) of the Z-span of integer vectors of full rank d."""
    rows = [list(map(int, v)) for v in vectors if any(v)]
    if not rows:
        raise ValueError("no nonzero vectors")
    d = len(rows[0])
    basis = []
    for col in range(d):
        # gcd-combine all rows with a nonzero entry in this column
        piv = None
        rest = []
        for r in rows:
            if r[col] == 0:
                rest.append(r)
                continue
            if piv is None:
                piv = r
                continue
            a, b = piv, r
            while b[col] != 0:
                q = a[col] // b[col]
                a = [x - q * y for x, y in zip(a, b)]
                a, b = b, a
            piv = a
            if any(b):
                rest.append(b)
        if piv is None:
            raise ValueError("vectors do not span a full-rank lattice")
        if piv[col] < 0:
            piv = [-x for x in piv]
        basis.append(piv)
        rows = rest
    # reduce entries above the diagonal
    for i in range(d):
        for k in range(i):
            q = basis[k][i] // basis[i][i]
            if q:
                basis[k] = [x - q * y for x, y in zip(basis[k], basis[i])]
    return basis
