import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barcodebases import GF2, QQ, Matrix, PrimeField, SingularMatrixError, col_op, inverse, matrix, multiply, rank, row_op, rref
from barcodebases.matrix import (
    is_barcode_form,
    is_invertible,
    is_reversed_barcode_form,
    reversed_column_echelon,
)
from barcodebases.oracle import random_invertible, random_matrix

F5 = PrimeField(5)


@st.composite
def matrices(draw, field=F5, max_side=6):
    rows = draw(st.integers(0, max_side))
    cols = draw(st.integers(0, max_side))
    seed = draw(st.integers(0, 2**32 - 1))
    density = draw(st.sampled_from([0.2, 0.5, 1.0]))
    return random_matrix(np.random.default_rng(seed), field, rows, cols, density)


def _naive_rank(M):
    """Rank by elimination on plain Python lists, independent of the kernels."""
    F = M.field
    rows = [[F(x) for x in row] for row in M.tolist()]
    r = 0
    for c in range(M.cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        for i in range(r + 1, len(rows)):
            f = F.mul(rows[i][c], inv)
            rows[i] = [F.sub(a, F.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def test_elementary_matrix_acts_by_row_and_column_operations(field):
    rng = np.random.default_rng(1)
    for _ in range(50):
        M = random_matrix(rng, field, 4, 4)
        p, q = rng.choice(4, size=2, replace=False)
        lam = field.random_scalar(rng)
        E = Matrix.elementary(field, 4, int(p), int(q), lam)
        assert row_op(M, int(p), int(q), lam) == multiply(E, M)
        assert col_op(M, int(q), int(p), lam) == multiply(M, E)


def test_row_op_worked_step():
    A2 = matrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ)
    assert row_op(A2, 1, 2, 1) == matrix([[1, 0, 0], [0, 1, 1], [0, 0, 1]], QQ)


def test_col_op_worked_step():
    A3 = matrix([[1, 0, 1], [0, 1, 1], [0, 0, 0]], QQ)
    assert col_op(A3, 2, 1, -1) == matrix([[1, 0, 1], [0, 1, 0], [0, 0, 0]], QQ)


def test_elementary_ops_validate_indices():
    M = Matrix.identity(GF2, 3)
    with pytest.raises(ValueError):
        row_op(M, 1, 1, 1)
    with pytest.raises(IndexError):
        row_op(M, 0, 3, 1)
    with pytest.raises(ValueError):
        col_op(M, 2, 2, 1)
    with pytest.raises(IndexError):
        col_op(M, -1, 0, 1)


@given(matrices(), st.integers(0, 4))
def test_row_op_is_undone_by_negated_scalar(M, lam):
    if M.rows < 2:
        return
    assert row_op(row_op(M, 0, 1, lam), 0, 1, -lam) == M


def test_zero_scalar_changes_nothing():
    M = matrix([[1, 2], [3, 4]], F5)
    assert row_op(M, 0, 1, 0) == M
    assert col_op(M, 0, 1, 0) == M


def _is_rref(R):
    last = -1
    seen_zero = False
    for i in range(R.rows):
        nz = np.flatnonzero(R.a[i])
        if not nz.size:
            seen_zero = True
            continue
        if seen_zero:
            return False
        c = int(nz[0])
        if c <= last or R.a[i, c] != 1 or np.count_nonzero(R.a[:, c]) != 1:
            return False
        last = c
    return True


@settings(max_examples=150)
@given(matrices())
def test_rref_certificate(M):
    R, T = rref(M)
    assert is_invertible(T)
    assert multiply(T, M) == R
    assert _is_rref(R)
    assert rank(R) == rank(M) == _naive_rank(M)


@settings(max_examples=60)
@given(matrices(field=QQ, max_side=4))
def test_rref_certificate_over_rationals(M):
    R, T = rref(M)
    assert multiply(T, M) == R
    assert _is_rref(R)
    assert rank(M) == _naive_rank(M)


def test_rref_of_identity_and_zero(field):
    I = Matrix.identity(field, 3)
    assert rref(I) == (I, I)
    Z = Matrix.zeros(field, 2, 3)
    R, T = rref(Z)
    assert R == Z and T == Matrix.identity(field, 2)


def test_inverse(field):
    rng = np.random.default_rng(2)
    for n in range(5):
        g, ginv = random_invertible(rng, field, n)
        assert inverse(g) == ginv
        assert multiply(g, ginv) == Matrix.identity(field, n)
    with pytest.raises(SingularMatrixError):
        inverse(matrix([[1, 1], [1, 1]], field))
    with pytest.raises(ValueError):
        inverse(Matrix.zeros(field, 2, 3))


@settings(max_examples=150)
@given(matrices())
def test_reversed_column_echelon_certificate(M):
    R, S = reversed_column_echelon(M)
    assert is_invertible(S)
    assert multiply(M, S) == R
    r = rank(M)
    assert not R.a[:, : M.cols - r].any()
    # pivots: lowest nonzero of each of the last r columns, rows increasing
    rows = [int(np.flatnonzero(R.a[:, c])[-1]) for c in range(M.cols - r, M.cols)]
    assert rows == sorted(rows) and len(set(rows)) == r
    for c, row in zip(range(M.cols - r, M.cols), rows):
        assert R.a[row, c] == 1
        assert np.count_nonzero(R.a[row]) == 1


def test_barcode_form_predicate():
    assert is_barcode_form(matrix([[1, 0, 0], [0, 0, 1]], GF2)).pivot_col == (0, 2)
    assert is_barcode_form(matrix([[0, 1], [1, 0]], GF2)) is None
    assert is_barcode_form(matrix([[0, 0], [1, 0]], GF2)) is None
    assert is_barcode_form(matrix([[2, 0]], F5)) is None
    assert is_barcode_form(Matrix.zeros(GF2, 2, 3)) is not None


def test_reversed_barcode_form_predicate():
    assert is_reversed_barcode_form(matrix([[0, 1, 0], [0, 0, 1]], GF2)) is not None
    assert is_reversed_barcode_form(matrix([[0, 0, 1], [0, 1, 0]], GF2)) is None
    assert is_reversed_barcode_form(matrix([[1, 0], [0, 0]], GF2)) is None
    # a single pivot in the last column is accepted wherever it sits
    assert is_reversed_barcode_form(matrix([[0, 1], [0, 0]], GF2)) is not None
