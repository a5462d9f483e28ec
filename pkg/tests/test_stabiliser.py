import numpy as np
import pytest

from barcodebases import GF2, QQ, Barcode, BasisChange, Matrix, PrimeField, canonical_matrices
from barcodebases.oracle import random_barcode, random_basis_change, random_type
from barcodebases.orders import Interval
from barcodebases.persistence import apply_basis_change
from barcodebases.stabiliser import (
    NotAStabiliserError,
    StabiliserBlocks,
    block_keys,
    blocks_multiply,
    blocks_to_element,
    element_to_blocks,
    is_stabiliser,
    random_blocks,
    stab_dimension,
)
from barcodebases.zigzag import canonical_zigzag

from conftest import intro_module

INTRO = Barcode({(0, 1): 1, (0, 3): 1, (1, 3): 1})


def test_introductory_stabiliser_dimension():
    assert stab_dimension(INTRO) == 6
    assert set(block_keys(INTRO)) == {
        (Interval(0, 1), Interval(0, 3)),
        (Interval(0, 1), Interval(1, 3)),
        (Interval(0, 3), Interval(1, 3)),
    }


def test_single_class_stabiliser_is_general_linear():
    assert stab_dimension(Barcode({(0, 2): 4})) == 16
    assert stab_dimension(Barcode()) == 0


def test_identity_blocks_give_identity():
    m = intro_module()
    e = blocks_to_element(StabiliserBlocks.identity(INTRO, GF2), m.matrices)
    assert e == BasisChange.identity(GF2, m.dims)


def _round_trip(bar, length, field, tau, rng):
    if tau is None:
        m = canonical_matrices(bar, length, field)
    else:
        m = canonical_zigzag(bar, tau, field)
    a = random_blocks(bar, field, rng, tau)
    b = random_blocks(bar, field, rng, tau)
    ga = blocks_to_element(a, m.matrices, m.dims)
    gb = blocks_to_element(b, m.matrices, m.dims)
    assert is_stabiliser(ga, m.matrices, tau)
    assert element_to_blocks(ga, m.matrices, m.dims, tau) == a
    assert blocks_to_element(blocks_multiply(a, b), m.matrices, m.dims) == ga @ gb
    assert a.free_parameters() == stab_dimension(bar, tau)


def test_block_round_trips(field):
    rng = np.random.default_rng(0)
    for _ in range(60):
        length = int(rng.integers(0, 7))
        bar = random_barcode(rng, length, max_bars=5, max_mult=3)
        _round_trip(bar, length, field, None, rng)


def test_zigzag_block_round_trips(field):
    rng = np.random.default_rng(1)
    for _ in range(60):
        length = int(rng.integers(0, 7))
        tau = random_type(rng, length)
        bar = random_barcode(rng, length, max_bars=5, max_mult=3)
        _round_trip(bar, length, field, tau, rng)


def test_non_stabiliser_is_rejected():
    m = intro_module()
    g = random_basis_change(0, GF2, m.dims)
    if apply_basis_change(g, m.matrices) == m.matrices:
        pytest.skip("random element happened to stabilise")
    assert not is_stabiliser(g, m.matrices)
    with pytest.raises(NotAStabiliserError):
        element_to_blocks(g, m.matrices)


def test_block_validation():
    with pytest.raises(ValueError):
        StabiliserBlocks(INTRO, GF2, {Interval(0, 1): Matrix.identity(GF2, 1)})
    diag = {x: Matrix.identity(GF2, 1) for x in INTRO}
    diag[Interval(0, 1)] = Matrix.zeros(GF2, 1, 1)
    off = {k: Matrix.zeros(GF2, 1, 1) for k in block_keys(INTRO)}
    with pytest.raises(ValueError):
        StabiliserBlocks(INTRO, GF2, diag, off)


def test_stabiliser_orbit_gives_other_barcode_bases():
    m = canonical_matrices(INTRO, 3, PrimeField(5))
    rng = np.random.default_rng(3)
    h = random_basis_change(rng, PrimeField(5), m.dims)
    scrambled = m.transformed(h.inverse())
    s = blocks_to_element(random_blocks(INTRO, PrimeField(5), rng), m.matrices)
    # h brings the scrambled module to barcode form, and so does s h
    assert apply_basis_change(s @ h, scrambled.matrices) == m.matrices


def test_is_stabiliser_shape_check():
    with pytest.raises(ValueError):
        is_stabiliser(BasisChange.identity(QQ, (1, 1)), [Matrix.identity(QQ, 2)])
