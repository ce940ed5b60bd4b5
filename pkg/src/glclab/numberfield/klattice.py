"""Lattices inside a number field and their multiplier orders."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from ..exact import linalg as LA
from ..exact.numfield import FieldElement, NumberField
from ..exact.rational import common_denominator


class KLattice:
    """Z-span of a Q-basis b_1..b_d of K."""

    __slots__ = ("field", "basis", "_cmat", "_cinv")

    def __init__(self, field: NumberField, basis: Sequence[FieldElement]):
        basis = tuple(basis)
        if len(basis) != field.degree:
            raise ValueError(f"need {field.degree} basis elements, got {len(basis)}")
        if any(b.field != field for b in basis):
            raise ValueError("basis elements from another field")
        self.field = field
        self.basis = basis
        # column j = power-basis coordinates of b_j
        self._cmat = [[b.coords[i] for b in basis] for i in range(field.degree)]
        if LA.det(self._cmat) == 0:
            raise ValueError("basis elements are linearly dependent over Q")
        self._cinv = LA.inverse(self._cmat)

    @classmethod
    def power_basis(cls, field: NumberField) -> KLattice:
        return cls(field, [field.element(field.power_of_alpha(k)) for k in range(field.degree)])

    @classmethod
    def from_coords(cls, field: NumberField, coords: Sequence[Sequence]) -> KLattice:
        return cls(field, [field.element(c) for c in coords])

    @property
    def degree(self) -> int:
        return self.field.degree

    def coordinate_matrix(self) -> list[list[Fraction]]:
        return [list(r) for r in self._cmat]

    def coords_of(self, xi: FieldElement) -> tuple:
        """Rational coordinates of xi in this basis."""
        return tuple(LA.matvec(self._cinv, xi.coords))

    def contains(self, xi: FieldElement) -> bool:
        return all(c.denominator == 1 for c in self.coords_of(xi))

    def element(self, m: Sequence) -> FieldElement:
        out = self.field.zero
        for c, b in zip(m, self.basis):
            if c:
                out = out + b * Fraction(c)
        return out

    def mult_matrix(self, omega: FieldElement) -> list[list[Fraction]]:
        """Matrix of x -> omega*x in this basis (column j = coords of omega*b_j)."""
        cols = [self.coords_of(omega * b) for b in self.basis]
        d = self.degree
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def scaled(self, q) -> KLattice:
        q = Fraction(q)
        return KLattice(self.field, [b * q for b in self.basis])

    def trace_form_det(self) -> Fraction:
        """det(Tr(b_i b_j)) = (det of the embedding matrix)^2."""
        d = self.degree
        m = [[(self.basis[i] * self.basis[j]).trace() for j in range(d)] for i in range(d)]
        return LA.det(m)

    def same_as(self, other: KLattice) -> bool:
        if other.field != self.field:
            return False
        return LA.same_column_lattice(self._cmat, other._cmat)

    def to_json(self) -> dict:
        return {"field": {"poly": list(self.field.poly.coeffs)}, "basis": [b.to_json() for b in self.basis]}

    def __repr__(self):
        return f"KLattice({self.field!r}, {list(self.basis)})"


@dataclass
class OrderData:
    order: KLattice
    contains_one: bool
    closed: bool  # products of basis elements stay in the order
    lattice_is_module: bool  # every basis element maps the lattice into itself

    @property
    def certified(self) -> bool:
        return self.contains_one and self.closed and self.lattice_is_module


def order_of(lam: KLattice) -> OrderData:
    """O = {x in K : x*Lambda in Lambda}, by integer linear algebra.

    For x = sum c_k alpha^k the matrix of multiplication by x in the basis of
    Lambda is sum c_k A_k; integrality of all d^2 entries is a rational linear
    condition A c in Z^{d^2}. With D clearing denominators and H0 a basis of
    the row lattice of D*A, the solutions are exactly D * H0^{-1} Z^d.
    """
    K = lam.field
    d = K.degree
    mats = [lam.mult_matrix(K.element(K.power_of_alpha(k))) for k in range(d)]
    rows = [[mats[k][i][j] for k in range(d)] for i in range(d) for j in range(d)]
    D = common_denominator(x for r in rows for x in r)
    int_rows = [[int(x * D) for x in r] for r in rows]
    h0 = LA.lattice_basis(int_rows)
    h0inv = LA.inverse(h0)
    # columns of D * H0^{-1} are power-basis coordinates of a basis of O
    cols = [[D * h0inv[i][j] for i in range(d)] for j in range(d)]
    # canonical basis: HNF of the coordinate lattice
    den = common_denominator(x for c in cols for x in c)
    canon = LA.lattice_basis([[int(x * den) for x in c] for c in cols])
    basis = [K.element([Fraction(x, den) for x in row]) for row in canon]
    order = KLattice(K, basis)
    one_ok = order.contains(K.one)
    closed = all(order.contains(a * b) for a in basis for b in basis)
    module = all(LA.is_integral(lam.mult_matrix(a)) for a in basis)
    return OrderData(order, one_ok, closed, module)
