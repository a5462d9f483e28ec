"""Dense exact matrices and the echelon and barcode-form machinery built on them.

Indices are 0-based throughout. ``e(p, q, lam)`` denotes the elementary matrix
``I + lam * E_pq``: left multiplication adds ``lam`` times row ``q`` to row
``p``, right multiplication adds ``lam`` times column ``p`` to column ``q``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .field import GF2, Field, Scalar


class SingularMatrixError(ArithmeticError):
    """Raised when inverting a matrix that is not invertible."""


class Matrix:
    """A dense matrix over an exact field.

    The matrix owns a 2D numpy array (``int64`` reduced mod p, or ``object``
    holding Fractions). Methods named ``add_row``, ``add_col``, ``scale_row``,
    ``scale_col`` mutate in place; everything else returns new matrices.

    Args:
        field: The scalar field.
        data: Nested sequence or array of entries.
        shape: Required when ``data`` is empty, to fix the row/column counts.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: Field, data: Any, shape: Optional[tuple[int, int]] = None):
        self.field = field
        if isinstance(data, Matrix):
            data = data.a
        arr = field.array(data)
        if shape is not None:
            arr = arr.reshape(shape)
        if arr.ndim != 2:
            raise ValueError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        self.a = arr

    @classmethod
    def _wrap(cls, field: Field, arr: np.ndarray) -> "Matrix":
        m = cls.__new__(cls)
        m.field = field
        m.a = arr
        return m

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls._wrap(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        out = field.zeros(n, n)
        for i in range(n):
            out[i, i] = field.one
        return cls._wrap(field, out)

    @classmethod
    def elementary(cls, field: Field, n: int, p: int, q: int, lam: Scalar) -> "Matrix":
        """The elementary matrix ``e(p, q, lam) = I + lam * E_pq`` (``p != q``)."""
        if p == q:
            raise ValueError("elementary matrix needs distinct indices")
        out = cls.identity(field, n)
        out.a[p, q] = field(lam)
        return out

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, idx: tuple[int, int]) -> Scalar:
        v = self.a[idx]
        return int(v) if self.field.dtype is np.int64 else v

    def __setitem__(self, idx: tuple[int, int], value: Scalar) -> None:
        self.a[idx] = self.field(value)

    def tolist(self) -> list[list[Scalar]]:
        return [[self[i, j] for j in range(self.cols)] for i in range(self.rows)]

    def copy(self) -> "Matrix":
        return Matrix._wrap(self.field, self.a.copy())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.all(self.a == other.a))
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Matrix({self.field!r}, {self.tolist()})"

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return multiply(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        return Matrix._wrap(self.field, self.field.normalize(self.a + other.a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same(self, other)
        return Matrix._wrap(self.field, self.field.normalize(self.a - other.a))

    def is_zero(self) -> bool:
        return not bool(np.any(self.a != 0))

    def transpose(self) -> "Matrix":
        return Matrix._wrap(self.field, np.ascontiguousarray(self.a.T))

    def antitranspose(self) -> "Matrix":
        """Transpose across the anti-diagonal: entry (i, j) moves to (n-1-j, m-1-i)."""
        return Matrix._wrap(self.field, np.ascontiguousarray(self.a[::-1, ::-1].T))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        sub = self.a[np.ix_(list(rows), list(cols))] if len(rows) and len(cols) else None
        if sub is None:
            return Matrix.zeros(self.field, len(rows), len(cols))
        return Matrix._wrap(self.field, np.ascontiguousarray(sub))

    # -- in-place elementary operations ------------------------------------

    def add_row(self, p: int, q: int, lam: Scalar) -> None:
        """Row(p) += lam * Row(q), in place."""
        if lam == 0:
            return
        self.a[p] = self.field.normalize(self.a[p] + self.field(lam) * self.a[q])

    def add_col(self, q: int, p: int, lam: Scalar) -> None:
        """Col(q) += lam * Col(p), in place."""
        if lam == 0:
            return
        self.a[:, q] = self.field.normalize(self.a[:, q] + self.field(lam) * self.a[:, p])

    def scale_row(self, p: int, lam: Scalar) -> None:
        self.a[p] = self.field.normalize(self.a[p] * self.field(lam))

    def scale_col(self, q: int, lam: Scalar) -> None:
        self.a[:, q] = self.field.normalize(self.a[:, q] * self.field(lam))

    def permuted(self, row_perm: Optional[Sequence[int]] = None, col_perm: Optional[Sequence[int]] = None) -> "Matrix":
        """New matrix whose row ``i`` is old row ``row_perm[i]`` (same for columns)."""
        arr = self.a
        if row_perm is not None:
            arr = arr[list(row_perm)] if len(row_perm) else arr[:0]
        if col_perm is not None:
            arr = arr[:, list(col_perm)] if len(col_perm) else arr[:, :0]
        return Matrix._wrap(self.field, np.ascontiguousarray(arr))


def _check_same(a: Matrix, b: Matrix) -> None:
    if a.field != b.field or a.shape != b.shape:
        raise ValueError(f"incompatible matrices {a.shape} over {a.field} and {b.shape} over {b.field}")


def matrix(rows: Iterable[Iterable[Any]], field: Field = GF2, shape: Optional[tuple[int, int]] = None) -> Matrix:
    """Convenience constructor: ``matrix([[1, 0], [0, 1]], field)``."""
    return Matrix(field, list(list(r) for r in rows), shape=shape)


# -- functional elementary operations --------------------------------------


def _check_pair(p: int, q: int, n: int, what: str) -> None:
    if p == q:
        raise ValueError(f"{what} operation needs distinct indices, got {p} twice")
    for x in (p, q):
        if not 0 <= x < n:
            raise IndexError(f"{what} index {x} out of range for size {n}")


def row_op(M: Matrix, p: int, q: int, lam: Scalar) -> Matrix:
    """Returns ``e(p, q, lam) @ M``: row ``p`` gains ``lam`` times row ``q``.

    Raises:
        ValueError: if ``p == q``.
        IndexError: if an index is out of range.
    """
    _check_pair(p, q, M.rows, "row")
    out = M.copy()
    out.add_row(p, q, lam)
    return out


def col_op(M: Matrix, q: int, p: int, lam: Scalar) -> Matrix:
    """Returns ``M @ e(p, q, lam)``: column ``q`` gains ``lam`` times column ``p``.

    Raises:
        ValueError: if ``p == q``.
        IndexError: if an index is out of range.
    """
    _check_pair(p, q, M.cols, "column")
    out = M.copy()
    out.add_col(q, p, lam)
    return out


# -- standard kernels -------------------------------------------------------


def multiply(A: Matrix, B: Matrix) -> Matrix:
    """Exact product ``A @ B``.

    Raises:
        ValueError: on field or shape mismatch.
    """
    if A.field != B.field:
        raise ValueError("matrices over different fields")
    if A.cols != B.rows:
        raise ValueError(f"cannot multiply {A.shape} by {B.shape}")
    return Matrix._wrap(A.field, A.field.normalize(_kernels.matmul(A.a, B.a, A.field)))


def rank(M: Matrix) -> int:
    return _kernels.rank(M.a, M.field)


def rref_full(M: Matrix) -> tuple[Matrix, Matrix, list[int], int]:
    """Like :func:`rref` but also returns the pivot columns and the row-operation count."""
    R, T, pivots, ops = _kernels.rref(M.a, M.field)
    return Matrix._wrap(M.field, R), Matrix._wrap(M.field, T), list(pivots), int(ops)


def rref(M: Matrix) -> tuple[Matrix, Matrix]:
    """Reduced row echelon form with its certificate.

    Returns:
        ``(R, T)`` with ``T`` invertible and ``T @ M == R``.
    """
    R, T, _, _ = rref_full(M)
    return R, T


def inverse(M: Matrix) -> Matrix:
    """Inverse of a square matrix.

    Raises:
        ValueError: if ``M`` is not square.
        SingularMatrixError: if ``M`` is singular.
    """
    if M.rows != M.cols:
        raise ValueError(f"only square matrices are invertible, got {M.shape}")
    _, T, pivots, _ = rref_full(M)
    if len(pivots) != M.rows:
        raise SingularMatrixError("matrix is singular")
    return T


def is_invertible(M: Matrix) -> bool:
    return M.rows == M.cols and rank(M) == M.rows


def reversed_column_echelon_full(M: Matrix) -> tuple[Matrix, Matrix, int]:
    """:func:`reversed_column_echelon` plus the elementary-operation count."""
    Rt, Tt, _, ops = rref_full(M.antitranspose())
    # Tt @ J M^T J = Rt, so M @ (J Tt^T J) = J Rt^T J.
    return Rt.antitranspose(), Tt.antitranspose(), ops


def reversed_column_echelon(M: Matrix) -> tuple[Matrix, Matrix]:
    """Reversed reduced column echelon form by column operations.

    Elimination starts from the last row and works upwards, always claiming
    the rightmost free column. In the result the pivot columns are the last
    ``r`` columns, each pivot is a 1 and the lowest nonzero entry of its
    column, the pivot rows increase from left to right, and a pivot row is
    zero apart from its pivot.

    Returns:
        ``(R, S)`` with ``S`` invertible and ``M @ S == R``.
    """
    R, S, _ = reversed_column_echelon_full(M)
    return R, S


# -- barcode-form recognition -------------------------------------------------


@dataclass(frozen=True)
class PivotProfile:
    """Pivot data of a matrix in (reversed) barcode form.

    Attributes:
        rank: Number of nonzero entries.
        pivots: ``(row, col)`` positions of the nonzero entries, ordered by row.
    """

    rank: int
    pivots: tuple[tuple[int, int], ...]

    @property
    def pivot_col(self) -> tuple[int, ...]:
        """Column of the pivot in each pivot row, in row order (the map c)."""
        return tuple(c for _, c in self.pivots)

    @property
    def pivot_rows(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.pivots)

    def rebuild(self, field: Field, rows: int, cols: int) -> Matrix:
        out = Matrix.zeros(field, rows, cols)
        for r, c in self.pivots:
            out.a[r, c] = field.one
        return out


def _partial_matching(M: Matrix) -> Optional[list[tuple[int, int]]]:
    """Nonzero positions if M is a 0/1 matrix with at most one 1 per row and column."""
    nz = np.argwhere(M.a != 0)
    if nz.size == 0:
        return []
    if any(M.a[r, c] != 1 for r, c in nz):
        return None
    rows = nz[:, 0]
    cols = nz[:, 1]
    if len(set(rows.tolist())) != len(rows) or len(set(cols.tolist())) != len(cols):
        return None
    return sorted((int(r), int(c)) for r, c in nz)


def is_barcode_form(M: Matrix) -> Optional[PivotProfile]:
    """Returns the pivot profile if ``M`` is in barcode form, else ``None``.

    Barcode form: 0/1 entries, at most one nonzero per row and column, the
    ``r`` nonzero entries in the first ``r`` rows with strictly increasing
    columns.
    """
    piv = _partial_matching(M)
    if piv is None:
        return None
    r = len(piv)
    if [row for row, _ in piv] != list(range(r)):
        return None
    cols = [c for _, c in piv]
    if any(a >= b for a, b in zip(cols, cols[1:])):
        return None
    return PivotProfile(r, tuple(piv))


def is_reversed_barcode_form(M: Matrix) -> Optional[PivotProfile]:
    """Returns the pivot profile if ``M`` is in reversed barcode form, else ``None``.

    Reversed barcode form: 0/1 entries, at most one nonzero per row and
    column, the ``r`` nonzero entries in the last ``r`` columns, with the
    pivot row strictly increasing as the column increases. Equivalently the
    anti-transpose is in barcode form. Zero rows may sit anywhere.
    """
    piv = _partial_matching(M)
    if piv is None:
        return None
    r = len(piv)
    by_col = sorted(piv, key=lambda rc: rc[1])
    if [c for _, c in by_col] != list(range(M.cols - r, M.cols)):
        return None
    rows = [row for row, _ in by_col]
    if any(a >= b for a, b in zip(rows, rows[1:])):
        return None
    return PivotProfile(r, tuple(piv))
