"""Multiplication operators by elements of H^0 and their graded pieces.

Operators act on the last filtration step ``H^0 + ... + H^(w-1)`` in the
coordinates of the adapted basis. Column ``j`` of a matrix holds the image of
basis vector ``j``, so composition is the matrix product.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

import numpy as np

from .hodge import Decomposition
from .ratlin import ZERO, Matrix, solve_left, vec

SHIFTS = (-1, 0, 1)


class NotInH0(ValueError):
    pass


class LeakageError(ArithmeticError):
    pass


class RelationViolation(AssertionError):
    def __init__(self, pair: tuple, relation: str):
        super().__init__(f"relation {relation} fails for multiplier pair {pair}")
        self.pair = pair
        self.relation = relation


class InputNotOnVariety(ValueError):
    pass


@dataclass(frozen=True)
class GradedOperator:
    full: Matrix
    blocks: dict
    t: tuple
    offsets: tuple

    @property
    def weight(self) -> int:
        return len(self.offsets) - 1

    def component(self, shift: int) -> Matrix:
        """The degree-``shift`` part as a full-size matrix."""
        n = self.full.rows
        entries = list(Matrix.zeros(n, n).entries)
        for p in range(self.weight):
            q = p + shift
            if not 0 <= q < self.weight:
                continue
            for i in range(self.offsets[q], self.offsets[q + 1]):
                for j in range(self.offsets[p], self.offsets[p + 1]):
                    entries[i * n + j] = self.full[i, j]
        return Matrix(n, n, tuple(entries))

    def far_blocks(self) -> list:
        """Blocks ``(p, shift)`` with ``|shift| > 1`` that are nonzero."""
        return [key for key, b in self.blocks.items() if abs(key[1]) > 1 and not b.is_zero()]


def top_basis(dec: Decomposition) -> Matrix:
    m = dec.top_dim
    return Matrix(m, dec.adapted_basis.cols, dec.adapted_basis.entries[:m * dec.adapted_basis.cols])


def to_coords(dec: Decomposition, v: Sequence) -> tuple:
    c = solve_left(top_basis(dec), [vec(v)])[0]
    if c is None:
        raise LeakageError("vector is outside the last filtration step")
    return c


def from_coords(dec: Decomposition, c: Sequence) -> tuple:
    basis = top_basis(dec)
    out = [ZERO] * basis.cols
    for ci, u in zip(c, basis.row_vectors()):
        if ci:
            out = [x + ci * y for x, y in zip(out, u)]
    return tuple(out)


def mult_operator(dec: Decomposition, t: Sequence, strict: bool = True) -> GradedOperator:
    """Multiplication by ``t`` in adapted coordinates, with its graded blocks.

    With ``strict`` a nonzero block of degree ``|shift| > 1`` raises
    :class:`LeakageError`; otherwise such blocks are kept for inspection.
    """
    t = vec(t)
    if not dec.h0.contains(t):
        raise NotInH0("multiplier is not in H^0")
    w = dec.weight
    basis = top_basis(dec)
    m = basis.rows
    images = [tuple(a * b for a, b in zip(t, u)) for u in basis.row_vectors()]
    coords = solve_left(basis, images) if m else []
    if any(c is None for c in coords):
        raise LeakageError("multiplication leaves the last filtration step")
    full = Matrix.from_rows([[coords[j][i] for j in range(m)] for i in range(m)], m)
    offsets = dec.block_offsets[:w + 1]
    blocks = {}
    for p in range(w):
        for q in range(w):
            blocks[(p, q - p)] = full.submatrix(range(offsets[q], offsets[q + 1]),
                                                range(offsets[p], offsets[p + 1]))
    op = GradedOperator(full, blocks, t, offsets)
    if strict and op.far_blocks():
        raise LeakageError(f"nonzero blocks beyond the tridiagonal band: {op.far_blocks()}")
    return op


def split(op: GradedOperator) -> tuple[Matrix, Matrix, Matrix]:
    return op.component(-1), op.component(0), op.component(1)


def wedge(a: Sequence[Matrix], b: Sequence[Matrix], i: int, j: int) -> Matrix:
    """``(A ^ B)(t_i, t_j) = A(t_i) B(t_j) - A(t_j) B(t_i)``."""
    return a[i] @ b[j] - a[j] @ b[i]


@dataclass(frozen=True)
class RelationReport:
    higgs_ok: bool
    checked_pairs: int


# relation name -> (left, right) component pairs whose wedges are summed
RELATIONS = {
    "i+": (("+", "+"),),
    "i-": (("-", "-"),),
    "ii+": (("0", "+"), ("+", "0")),
    "ii-": (("0", "-"), ("-", "0")),
    "iii": (("0", "0"), ("+", "-"), ("-", "+")),
    "D^D": (("D", "D"),),
}


def _integer_forms(ops: Sequence[GradedOperator]) -> dict:
    """Every component of every operator as an integer array, over one common denominator.

    All wedge sums are then ``(integer matrix) / den^2`` and vanish exactly
    when the integer numerator does.
    """
    den = 1
    for op in ops:
        for x in op.full.entries:
            den = lcm(den, x.denominator)
    forms = {}
    for key, shift in (("-", -1), ("0", 0), ("+", 1), ("D", None)):
        mats = []
        for op in ops:
            m = op.full if shift is None else op.component(shift)
            arr = np.empty((m.rows, m.cols), dtype=object)
            for i in range(m.rows):
                for j in range(m.cols):
                    arr[i, j] = int(m[i, j] * den)
            mats.append(arr)
        forms[key] = mats
    return forms


def verify_relations(dec: Decomposition, ops: Sequence[GradedOperator] | None = None
                     ) -> RelationReport:
    """Check the graded Higgs relations on every ordered pair of H^0 basis vectors.

    Raises :class:`RelationViolation` on the first failure; a nonzero block
    outside the tridiagonal band is reported as relation ``"tridiagonal"``.
    """
    if ops is None:
        ops = [mult_operator(dec, t, strict=False) for t in dec.h0.vectors()]
    for i, op in enumerate(ops):
        if op.far_blocks():
            raise RelationViolation((i,), "tridiagonal")
    forms = _integer_forms(ops)
    products: dict = {}

    def prod(a, b, i, j):
        key = (a, b, i, j)
        if key not in products:
            products[key] = forms[a][i].dot(forms[b][j])
        return products[key]

    n = len(ops)
    pairs = 0
    for i in range(n):
        for j in range(n):
            pairs += 1
            for name, terms in RELATIONS.items():
                value = sum(prod(a, b, i, j) - prod(a, b, j, i) for a, b in terms)
                if np.count_nonzero(value):
                    raise RelationViolation((i, j), name)
    return RelationReport(True, pairs)


def deformed_operator(op: GradedOperator, z, x: Sequence, y: Sequence) -> Matrix:
    """``z D0 + sum_p x_p D+_p + sum_p y_p D-_(p+1)`` for one multiplier."""
    z = Fraction(z)
    n = op.full.rows
    w = op.weight
    entries = [ZERO] * (n * n)
    for p in range(w):
        for q in range(w):
            if q == p:
                c = z
            elif q == p + 1:
                c = Fraction(x[p])
            elif q == p - 1:
                c = Fraction(y[q])
            else:
                continue
            if not c:
                continue
            for i in range(op.offsets[q], op.offsets[q + 1]):
                for j in range(op.offsets[p], op.offsets[p + 1]):
                    entries[i * n + j] = c * op.full[i, j]
    return Matrix(n, n, tuple(entries))


def higgs_family_check(dec: Decomposition, z, x: Sequence, y: Sequence,
                       ops: Sequence[GradedOperator] | None = None) -> bool:
    """Whether the deformed operator family still squares to zero.

    ``(z, x, y)`` must satisfy ``x_p y_p = z^2`` for ``p = 0..w-2``.
    """
    w = dec.weight
    x, y, z = vec(x), vec(y), Fraction(z)
    if len(x) != w - 1 or len(y) != w - 1:
        raise InputNotOnVariety(f"expected {w - 1} x- and y-parameters")
    for p, (a, b) in enumerate(zip(x, y)):
        if a * b != z * z:
            raise InputNotOnVariety(f"x_{p} y_{p} = {a * b} differs from z^2 = {z * z}")
    if ops is None:
        ops = [mult_operator(dec, t) for t in dec.h0.vectors()]
    mats = [deformed_operator(op, z, x, y) for op in ops]
    n = len(mats)
    return all(wedge(mats, mats, i, j).is_zero() for i in range(n) for j in range(n))
