"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries and never
rounds. Vectors are plain tuples of Fractions; matrices are immutable
row-major :class:`Matrix` values; subspaces are stored by their reduced
row-echelon basis so that equality of subspaces is equality of values.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction
Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


class DimensionMismatch(ValueError):
    pass


class DegenerateGram(ArithmeticError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; rejects zero denominators and other syntax."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(values: Iterable) -> tuple:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def hadamard(u: Sequence, v: Sequence) -> tuple:
    """Componentwise product: the multiplication of functions on a finite set."""
    return tuple(a * b for a, b in zip(u, v))


def add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Sequence) -> tuple:
    c = Fraction(c)
    return tuple(c * a for a in u)


def is_zero(u: Sequence) -> bool:
    return not any(u)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> Matrix:
        rows = [vec(r) for r in rows]
        if cols is None:
            if not rows:
                raise DimensionMismatch("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch(f"row of length {len(r)}, expected {cols}")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls(n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, values: Iterable) -> Matrix:
        values = vec(values)
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else ZERO
                               for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.rows else ()

    def row_vectors(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def to_lists(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def T(self) -> Matrix:
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __add__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        self._same_shape(other)
        return Matrix(self.rows, self.cols,
                      tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scaled(self, c) -> Matrix:
        c = Fraction(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        n, m = other.rows, other.cols
        b = other.entries
        # sparse-aware: graded blocks are mostly zero
        out = []
        for i in range(self.rows):
            acc = [ZERO] * m
            arow = self.entries[i * n:(i + 1) * n]
            for k, a in enumerate(arow):
                if not a:
                    continue
                base = k * m
                for j in range(m):
                    x = b[base + j]
                    if x:
                        acc[j] += a * x
            out.extend(acc)
        return Matrix(self.rows, m, tuple(out))

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``M v`` for a column vector ``v``."""
        if len(v) != self.cols:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.cols} columns")
        return tuple(dot(self.row(i), v) for i in range(self.rows))

    def submatrix(self, row_range: range, col_range: range) -> Matrix:
        return Matrix.from_rows([[self[i, j] for j in col_range] for i in row_range],
                                len(col_range))

    def _same_shape(self, other: Matrix) -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch(
                f"shape {self.rows}x{self.cols} vs {other.rows}x{other.cols}")


def _gauss_jordan(rows: list, ncols: int) -> tuple[list, list]:
    """In-place Gauss-Jordan on a list of mutable rows; returns (rows, pivot columns)."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        pr = next((i for i in range(r, nrows) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pivot_row = rows[r]
        inv = ONE / pivot_row[c]
        if inv != ONE:
            pivot_row[:] = [x * inv for x in pivot_row]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row_i = rows[i]
                    rows[i] = [x - f * y if y else x for x, y in zip(row_i, pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``m`` with zero rows dropped, and the rank."""
    rows, pivots = _gauss_jordan([list(r) for r in m.row_vectors()], m.cols)
    rank = len(pivots)
    return Matrix.from_rows(rows[:rank], m.cols), rank


def rank(m: Matrix) -> int:
    return rref(m)[1]


def det(m: Matrix) -> Fraction:
    if m.rows != m.cols:
        raise DimensionMismatch("determinant of a non-square matrix")
    rows = [list(r) for r in m.row_vectors()]
    n = m.rows
    result = ONE
    for c in range(n):
        pr = next((i for i in range(c, n) if rows[i][c]), None)
        if pr is None:
            return ZERO
        if pr != c:
            rows[c], rows[pr] = rows[pr], rows[c]
            result = -result
        p = rows[c][c]
        result *= p
        for i in range(c + 1, n):
            f = rows[i][c] / p
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return result


def solve_left(basis: Matrix, targets: Sequence[Sequence]) -> list:
    """Coordinates of each target in the row space of ``basis``.

    Returns a list with, for each target ``v``, the unique ``c`` such that
    ``sum(c[i] * basis.row(i)) == v``, or ``None`` when ``v`` is outside the
    row space. ``basis`` must have linearly independent rows.
    """
    k, d = basis.rows, basis.cols
    nt = len(targets)
    # columns of the system are basis rows; augment with the targets
    aug = [list(basis.column(j)) + [Fraction(t[j]) for t in targets] for j in range(d)]
    rows, pivots = _gauss_jordan(aug, k)
    if len(pivots) != k:
        raise DimensionMismatch("basis rows are linearly dependent")
    out = []
    for t in range(nt):
        col = k + t
        if any(rows[i][col] for i in range(k, d)):
            out.append(None)
        else:
            out.append(tuple(rows[i][col] for i in range(k)))
    return out


def kernel(m: Matrix) -> list:
    """Basis of the right null space ``{x : m x = 0}``."""
    rows, pivots = _gauss_jordan([list(r) for r in m.row_vectors()], m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * m.cols
        x[f] = ONE
        for r, p in enumerate(pivots):
            x[p] = -rows[r][f]
        basis.append(tuple(x))
    return basis


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: Matrix
    rank: int

    @classmethod
    def zero(cls, d: int) -> Subspace:
        return cls(d, Matrix.zeros(0, d), 0)

    @classmethod
    def full(cls, d: int) -> Subspace:
        return cls(d, Matrix.identity(d), d)

    def vectors(self) -> list:
        return self.basis.row_vectors()

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{self.ambient_dim}")
        if self.rank == 0:
            return is_zero(v)
        return solve_left(self.basis, [v])[0] is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.vectors())

    def coordinates(self, v: Sequence) -> tuple | None:
        if self.rank == 0:
            return () if is_zero(v) else None
        return solve_left(self.basis, [v])[0]


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    vectors = [vec(v) for v in vectors]
    for v in vectors:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
    if not vectors:
        return Subspace.zero(ambient_dim)
    basis, r = rref(Matrix.from_rows(vectors, ambient_dim))
    return Subspace(ambient_dim, basis, r)


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"Q^{a.ambient_dim} vs Q^{b.ambient_dim}")


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return span(a.vectors() + b.vectors(), a.ambient_dim)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [[A, A], [B, 0]]; rows of shape [0, x] span a ∩ b."""
    _check_same(a, b)
    d = a.ambient_dim
    if a.rank == 0 or b.rank == 0:
        return Subspace.zero(d)
    zeros = (ZERO,) * d
    stacked = [v + v for v in a.vectors()] + [v + zeros for v in b.vectors()]
    reduced, _ = rref(Matrix.from_rows(stacked, 2 * d))
    found = [r[d:] for r in reduced.row_vectors() if is_zero(r[:d])]
    return span(found, d)


def gram_matrix(vectors: Sequence[Sequence], gram: Matrix) -> Matrix:
    """Pairings ``u^T G v`` for all pairs of ``vectors``."""
    images = [gram.apply(v) for v in vectors]
    return Matrix.from_rows([[dot(u, gv) for gv in images] for u in vectors], len(vectors))


def _check_gram(gram: Matrix, d: int) -> None:
    if gram.rows != d or gram.cols != d:
        raise DimensionMismatch(f"{gram.rows}x{gram.cols} Gram matrix on Q^{d}")


def orth_complement(s: Subspace, gram: Matrix, within: Subspace) -> Subspace:
    """``{v in within : v^T G u = 0 for every u in s}``."""
    _check_same(s, within)
    _check_gram(gram, s.ambient_dim)
    if s.rank == 0 or within.rank == 0:
        return within
    w = within.vectors()
    gs = [gram.apply(u) for u in s.vectors()]
    # unknown coefficients c with v = sum c_i w_i
    system = Matrix.from_rows([[dot(wi, gu) for wi in w] for gu in gs], len(w))
    combos = kernel(system)
    d = s.ambient_dim
    found = []
    for c in combos:
        v = [ZERO] * d
        for ci, wi in zip(c, w):
            if ci:
                v = [x + ci * y for x, y in zip(v, wi)]
        found.append(v)
    return span(found, d)


def project(v: Sequence, s: Subspace, gram: Matrix) -> tuple:
    """Gram-orthogonal projection of ``v`` onto ``s``."""
    v = vec(v)
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} in Q^{s.ambient_dim}")
    _check_gram(gram, s.ambient_dim)
    if s.rank == 0:
        return (ZERO,) * s.ambient_dim
    basis = s.vectors()
    g = gram_matrix(basis, gram)
    if det(g) == 0:
        raise DegenerateGram("Gram matrix restricted to the subspace is singular")
    gv = gram.apply(v)
    rhs = [dot(u, gv) for u in basis]
    # g is symmetric, so solving g^T c = rhs by row-space coordinates works
    coeffs = solve_left(g, [rhs])[0]
    out = [ZERO] * s.ambient_dim
    for c, u in zip(coeffs, basis):
        if c:
            out = [x + c * y for x, y in zip(out, u)]
    return tuple(out)
