"""Exact dense linear algebra over the rationals.

Every cohomology computation in this package reduces to ranks, kernels and
induced quotient maps of small dense matrices.  Entries are
``fractions.Fraction`` throughout and nothing is ever rounded.  Elimination
always picks the first nonzero entry in column order as pivot, so results are
deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import MembershipError, ShapeError

Rational = Fraction


def rat(value) -> Fraction:
    """Coerce an int, Fraction or string like ``"3/4"`` / ``"-2"`` to an exact rational.

    Floats are rejected: inexact input has no place in the exact pipeline.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as an exact rational")


def format_rat(q: Fraction) -> str:
    """Render canonically: ``"a/b"``, or ``"a"`` when the denominator is 1."""
    return str(Fraction(q))


class RationalMatrix:
    """Dense matrix of Fractions; treat instances as immutable values."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries: Iterable) -> None:
        data = tuple(rat(x) for x in entries)
        if rows < 0 or cols < 0 or len(data) != rows * cols:
            raise ShapeError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(data)}"
            )
        self.rows = rows
        self.cols = cols
        self._data = data

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RationalMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(nrows, ncols, [x for r in rows for x in r])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def column(cls, entries: Sequence) -> "RationalMatrix":
        return cls(len(entries), 1, list(entries))

    def entry(self, i: int, j: int) -> Fraction:
        return self._data[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self._data[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> tuple:
        return tuple(self._data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            self.cols,
            self.rows,
            [self.entry(i, j) for j in range(self.cols) for i in range(self.rows)],
        )

    def is_zero(self) -> bool:
        return all(x == 0 for x in self._data)

    def scaled(self, factor) -> "RationalMatrix":
        f = rat(factor)
        return RationalMatrix(self.rows, self.cols, [f * x for x in self._data])

    def submatrix(self, row_slice: slice, col_slice: slice) -> "RationalMatrix":
        rows = range(self.rows)[row_slice]
        cols = range(self.cols)[col_slice]
        return RationalMatrix(
            len(rows), len(cols), [self.entry(i, j) for i in rows for j in cols]
        )

    def select_columns(self, indices: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix(
            self.rows,
            len(indices),
            [self.entry(i, j) for i in range(self.rows) for j in indices],
        )

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        orows = [other.row(k) for k in range(other.rows)]
        for i in range(self.rows):
            srow = self.row(i)
            acc = [Fraction(0)] * other.cols
            for k, s in enumerate(srow):
                if s:
                    orow = orows[k]
                    for j in range(other.cols):
                        if orow[j]:
                            acc[j] += s * orow[j]
            out.extend(acc)
        return RationalMatrix(self.rows, other.cols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return RationalMatrix(
            self.rows, self.cols, [a + b for a, b in zip(self._data, other._data)]
        )

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self + (-other)

    def __neg__(self) -> "RationalMatrix":
        return RationalMatrix(self.rows, self.cols, [-x for x in self._data])

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RationalMatrix)
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 16:
            return f"RationalMatrix({[[str(x) for x in self.row(i)] for i in range(self.rows)]})"
        return f"RationalMatrix({self.rows}x{self.cols})"


def hstack(*mats: RationalMatrix) -> RationalMatrix:
    mats = [m for m in mats]
    if not mats:
        raise ShapeError("hstack of nothing")
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise ShapeError("hstack row mismatch")
    data = []
    for i in range(rows):
        for m in mats:
            data.extend(m.row(i))
    return RationalMatrix(rows, sum(m.cols for m in mats), data)


def vstack(*mats: RationalMatrix) -> RationalMatrix:
    mats = [m for m in mats]
    if not mats:
        raise ShapeError("vstack of nothing")
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise ShapeError("vstack column mismatch")
    data = []
    for m in mats:
        data.extend(m._data)
    return RationalMatrix(sum(m.rows for m in mats), cols, data)


def block(grid: Sequence[Sequence[RationalMatrix]]) -> RationalMatrix:
    """Assemble a block matrix from a rectangular grid of blocks."""
    return vstack(*[hstack(*row) for row in grid])


def _reduced_echelon(rows: list) -> tuple[list, list]:
    """Row-reduce in place (copy) and return (rref rows, pivot column list)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pivot_row = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                row_r = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(m: RationalMatrix) -> int:
    """Dimension of the column space, by exact Gaussian elimination."""
    _, pivots = _reduced_echelon(m.to_rows())
    return len(pivots)


def nullspace_basis(m: RationalMatrix) -> RationalMatrix:
    """Basis of ker(m), one column per free variable, in column order.

    The result has shape cols(m) x (cols(m) - rank(m)); multiplying by m
    gives the exact zero matrix.
    """
    rref, pivots = _reduced_echelon(m.to_rows())
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    cols = []
    for j in free:
        v = [Fraction(0)] * m.cols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rref[i][j]
        cols.append(v)
    data = [cols[c][r] for r in range(m.cols) for c in range(len(free))]
    return RationalMatrix(m.cols, len(free), data)


def column_space_basis(m: RationalMatrix) -> RationalMatrix:
    """The pivot columns of m (original entries), a basis of the column space."""
    _, pivots = _reduced_echelon(m.to_rows())
    return m.select_columns(pivots)


def solve(m: RationalMatrix, rhs: RationalMatrix) -> Optional[RationalMatrix]:
    """A particular solution X of m X = rhs (free variables 0), or None."""
    if m.rows != rhs.rows:
        raise ShapeError("solve: row mismatch")
    aug = [list(m.row(i)) + list(rhs.row(i)) for i in range(m.rows)]
    rref, pivots = _reduced_echelon(aug)
    if any(p >= m.cols for p in pivots):
        return None
    sol = [[Fraction(0)] * rhs.cols for _ in range(m.cols)]
    for i, pc in enumerate(pivots):
        sol[pc] = rref[i][m.cols :]
    return RationalMatrix.from_rows(sol) if m.cols else RationalMatrix.zeros(0, rhs.cols)


def inverse(m: RationalMatrix) -> RationalMatrix:
    if m.rows != m.cols:
        raise ShapeError("inverse of a non-square matrix")
    inv = solve(m, RationalMatrix.identity(m.rows))
    if inv is None or rank(m) != m.rows:
        raise ShapeError("matrix is singular")
    return inv


def quotient_map(
    f: RationalMatrix,
    sub_source: RationalMatrix,
    sub_target: RationalMatrix,
    split: int,
) -> RationalMatrix:
    """Matrix of the map induced by f on a quotient.

    ``sub_source`` holds class representatives of the source quotient, one per
    column.  ``sub_target`` is the concatenation (representatives | quotiented
    subspace basis); ``split`` marks where the representatives end.  Each image
    f @ v is expressed in ``sub_target``'s columns and the first ``split``
    coordinates are kept.  Raises MembershipError when an image is not in the
    stated span (the usual symptom of feeding in a non-chain-map).
    """
    if not 0 <= split <= sub_target.cols:
        raise ShapeError("split out of range")
    images = f @ sub_source
    coords = solve(sub_target, images)
    if coords is None:
        for j in range(sub_source.cols):
            if solve(sub_target, images.select_columns([j])) is None:
                raise MembershipError(
                    f"image of representative {j} is outside the stated span"
                )
        raise MembershipError("image outside the stated span")
    return coords.submatrix(slice(0, split), slice(None))
