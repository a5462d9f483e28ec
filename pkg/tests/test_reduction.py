import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from barcodebases import (
    GF2,
    QQ,
    Barcode,
    BasisChange,
    Matrix,
    PersistenceModule,
    PrimeField,
    barcode_via_ranks,
    canonical_matrices,
    comp_pers,
    extract_barcode,
    is_barcode_form,
    matrix,
)
from barcodebases.oracle import random_basis_change, random_module, verify_reduction
from barcodebases.persistence import apply_basis_change
from barcodebases.reduction import col_op_cascade, ordered_reduction, ordering_change, reduce_last

from conftest import EX27_OUTPUT, ex27_module, intro_module


def test_worked_example_output(field):
    res = comp_pers(ex27_module(field))
    assert [M.tolist() for M in res.reduced] == EX27_OUTPUT
    assert verify_reduction(ex27_module(field), res) == []


def test_worked_example_first_cascade():
    m = ex27_module(QQ)
    g = BasisChange.identity(QQ, m.dims)
    mats, g2 = col_op_cascade(m.matrices, g, 2, 1, 1, 2)
    assert mats[2] == matrix([[1, 0, 1], [0, 1, 0], [0, 0, 0]], QQ)
    assert mats[1] == Matrix.identity(QQ, 3)
    assert mats[0] == m.matrices[0]
    assert apply_basis_change(g2, m.matrices) == mats


def test_cascade_stops_when_the_induced_row_is_zero():
    F = PrimeField(5)
    mats = [matrix([[1, 0], [0, 1], [0, 0]], F), matrix([[1, 0, 3]], F)]
    g = BasisChange.identity(F, (2, 3, 1))
    out, g2 = col_op_cascade(mats, g, 1, 0, 0, 2)
    assert out[0] == mats[0]
    assert out[1] == matrix([[1, 0, 0]], F)
    assert apply_basis_change(g2, mats) == out


def test_cascade_checks_preconditions():
    mats = [matrix([[1, 1]], GF2)]
    g = BasisChange.identity(GF2, (2, 1))
    with pytest.raises(ValueError):
        col_op_cascade(mats, g, 0, 0, 1, 0)
    with pytest.raises(ValueError):
        col_op_cascade([matrix([[1, 0]], GF2)], g, 0, 0, 0, 1)


def test_reduce_last_keeps_prefix():
    F = PrimeField(5)
    m = random_module(3, max_dim=4, field=F, length=3)
    res = comp_pers(PersistenceModule(F, m.dims[:3], m.matrices[:2]))
    mats = list(res.reduced) + [Matrix(F, m.matrices[2].a)]
    out, g = reduce_last(mats, res.change)
    assert len(g) == 4
    assert all(is_barcode_form(A) is not None for A in out)
    assert out[:2] == res.reduced


def test_already_reduced_input_is_unchanged():
    m = intro_module()
    res = comp_pers(m)
    assert res.reduced == m.matrices
    assert res.barcode == Barcode({(0, 1): 1, (0, 3): 1, (1, 3): 1})


def test_degenerate_modules(field):
    for dims in [(0,), (3,), (0, 0, 0), (2, 0, 2), (0, 3)]:
        mats = [Matrix.zeros(field, dims[i + 1], dims[i]) for i in range(len(dims) - 1)]
        m = PersistenceModule(field, dims, mats)
        res = comp_pers(m)
        assert verify_reduction(m, res) == []
        assert res.barcode.census(len(dims) - 1) == dims


def test_zero_maps_give_points():
    m = PersistenceModule(GF2, (2, 1), [Matrix.zeros(GF2, 1, 2)])
    assert comp_pers(m).barcode.lines() == ["0 0 2", "1 1 1"]


def test_identity_module_is_one_long_bar_each():
    m = PersistenceModule(QQ, (3, 3, 3), [Matrix.identity(QQ, 3)] * 2)
    assert comp_pers(m).barcode == Barcode({(0, 2): 3})


def test_malformed_module_is_rejected():
    with pytest.raises(ValueError):
        comp_pers(PersistenceModule(GF2, (2, 2), [Matrix.zeros(GF2, 1, 2)]))


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([GF2, PrimeField(5), QQ]), st.sampled_from([0.3, 0.7, 1.0]))
def test_reduction_matches_rank_oracle(seed, field, density):
    m = random_module(seed, max_dim=5, max_length=5, field=field, density=density)
    res = comp_pers(m)
    assert verify_reduction(m, res) == []
    assert res.barcode == barcode_via_ranks(m)


def test_barcode_is_invariant_under_basis_change(field):
    for seed in range(25):
        m = random_module(seed, max_dim=4, max_length=4, field=field)
        g = random_basis_change(seed + 100, field, m.dims)
        assert comp_pers(m.transformed(g)).barcode == comp_pers(m).barcode


def test_extract_barcode_requires_barcode_form():
    with pytest.raises(ValueError):
        extract_barcode([matrix([[0, 1], [1, 0]], GF2)])
    assert extract_barcode([], dims=[2]) == Barcode({(0, 0): 2})


def test_on_prefix_reports_each_stage():
    seen = []
    m = random_module(5, max_dim=3, field=PrimeField(3), length=4)
    comp_pers(m, on_prefix=lambda k, mats: seen.append((k, all(is_barcode_form(A) for A in mats))))
    assert seen == [(k, True) for k in range(1, 5)]


def test_ordered_reduction_gives_canonical_matrices(field):
    for seed in range(20):
        m = random_module(seed, max_dim=4, max_length=4, field=field)
        g, chains, bar = ordered_reduction(m)
        assert apply_basis_change(g, m.matrices) == canonical_matrices(bar, m.length, field).matrices
        assert [c.interval for c in chains] == [iv for iv in bar for _ in range(bar[iv])]


def test_ordering_change_is_a_permutation():
    m = random_module(11, max_dim=4, field=GF2, length=3)
    res = comp_pers(m)
    P = ordering_change(res)
    assert P.certify()
    for comp in P.components:
        assert all(np.count_nonzero(row) == 1 for row in comp.a)


def test_worked_example_is_fast():
    m = ex27_module(QQ)
    comp_pers(m)
    start = time.perf_counter()
    comp_pers(m)
    assert time.perf_counter() - start < 0.01
