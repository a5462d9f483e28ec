import numpy as np
import pytest

from barcodebases import GF2, QQ, Matrix, PrimeField
from barcodebases.ladder import (
    InvalidLadder,
    LadderDecomposition,
    LadderModule,
    MatchingObstruction,
    NestedBars,
    NestedBarsTau,
    check_no_nested,
    decompose_ladder,
    ladder_from_blocks,
    random_decomposition,
    random_ladder,
    scramble_ladder,
    synthesize_ladder,
    to_block_matrix,
    validate_ladder,
)
from barcodebases.oracle import random_basis_change, random_module, random_type
from barcodebases.orders import Interval
from barcodebases.stabiliser import related
from barcodebases.zigzag import decompose_ladder_zigzag


def _round_trip(seed, field, tau, length):
    rng = np.random.default_rng(seed)
    D = random_decomposition(rng, length, tau)
    L = synthesize_ladder(D, length, field, tau)
    assert validate_ladder(L) == []
    g_src = random_basis_change(rng, field, L.source.dims)
    g_tgt = random_basis_change(rng, field, L.target.dims)
    res = decompose_ladder(scramble_ladder(L, g_src, g_tgt))
    assert res.decomposition == D
    key = tau if tau and "q" in tau else None
    for kind, src, dst in res.operations:
        assert src == dst or (related(src, dst, key) if kind == "col" else related(dst, src, key))


def test_round_trips(field):
    for seed in range(60):
        _round_trip(seed, field, None, seed % 6)


def test_zigzag_round_trips(field):
    rng = np.random.default_rng(99)
    for seed in range(60):
        length = seed % 6
        _round_trip(seed, field, random_type(rng, length), length)


def test_first_nested_instance():
    L = ladder_from_blocks([(1, 4), (2, 3)], [(0, 3)], [[1, 1]], 4)
    assert validate_ladder(L) == []
    with pytest.raises(NestedBars) as info:
        decompose_ladder(L)
    assert info.value.pair == (Interval(1, 4), Interval(2, 3))
    assert info.value.side == "source"
    assert "([1,4],[2,3])" in str(info.value)


def test_second_nested_instance():
    L = ladder_from_blocks([(1, 4)], [(0, 3), (1, 2)], [[1], [1]], 4)
    assert validate_ladder(L) == []
    with pytest.raises(NestedBars) as info:
        decompose_ladder(L)
    assert info.value.pair == (Interval(0, 3), Interval(1, 2))
    assert info.value.side == "target"


def test_identity_map_matches_every_bar():
    m = random_module(4, max_dim=3, field=PrimeField(5), length=3)
    from barcodebases import comp_pers

    bar = comp_pers(m).barcode
    if check_no_nested(bar) is not None:
        pytest.skip("random module has nested bars")
    L = LadderModule(m, m, tuple(Matrix.identity(m.field, n) for n in m.dims))
    D = decompose_ladder(L).decomposition
    assert D.matches == {(iv, iv): n for iv, n in bar.items()}
    assert not D.unmatched_source and not D.unmatched_target


def test_identity_zigzag_map():
    L = random_ladder(3, 3, GF2, "fqf")
    V = L.source
    ident = LadderModule(V, V, tuple(Matrix.identity(GF2, n) for n in V.dims))
    D = decompose_ladder_zigzag(ident, "fqf").decomposition
    assert D.source_barcode() == D.target_barcode()
    assert all(a == b for a, b in D.matches)


def test_zero_map_leaves_everything_unmatched():
    D = LadderDecomposition({}, {(0, 2): 2}, {(1, 2): 1})
    L = synthesize_ladder(D, 2, QQ)
    assert decompose_ladder(L).decomposition == D


def test_result_certifies_bases():
    L = random_ladder(11, 4, PrimeField(3))
    res = decompose_ladder(L)
    decomp, (gV, gW) = res
    assert gV.certify() and gW.certify()
    assert decomp.source_barcode().census(4) == L.source.dims
    assert decomp.target_barcode().census(4) == L.target.dims


def test_non_commuting_maps_are_invalid():
    L = ladder_from_blocks([(0, 1)], [(0, 1)], [[1]], 1)
    maps = list(L.maps)
    maps[1] = Matrix.zeros(GF2, 1, 1)
    with pytest.raises(InvalidLadder):
        decompose_ladder(LadderModule(L.source, L.target, maps))


def test_unrelated_pairs_cannot_be_matched():
    with pytest.raises(ValueError):
        synthesize_ladder(LadderDecomposition({((0, 0), (1, 1)): 1}), 1)


def test_zigzag_nesting_uses_the_type():
    # [1,2] sits strictly inside [0,3] for plain modules but not for type qff
    L = ladder_from_blocks([(0, 3), (1, 2)], [], np.zeros((0, 2), dtype=int), 3, tau="qff")
    res = decompose_ladder(L)
    assert res.decomposition.unmatched_source == {Interval(0, 3): 1, Interval(1, 2): 1}
    L = ladder_from_blocks([(1, 2), (0, 3)], [], np.zeros((0, 2), dtype=int), 3, tau="fqf")
    with pytest.raises(NestedBarsTau):
        decompose_ladder(L)


def test_zigzag_obstruction_without_nesting():
    # both barcodes are free of nested pairs, yet no partial matching exists
    L = ladder_from_blocks([(0, 0), (2, 2)], [(0, 2)], [[1, 1]], 2, tau="qf")
    assert validate_ladder(L) == []
    with pytest.raises(MatchingObstruction):
        decompose_ladder(L)


def test_block_matrix_of_canonical_ladder():
    L = ladder_from_blocks([(0, 2), (1, 2)], [(0, 1)], [[1, 1]], 2)
    bm = to_block_matrix(L)
    assert bm.row_bars == [Interval(0, 1)]
    assert bm.col_bars == [Interval(0, 2), Interval(1, 2)]
    assert bm.body.tolist() == [[1, 1]]


def test_decomposition_lines():
    D = LadderDecomposition({((0, 1), (0, 2)): 2}, {(1, 2): 1}, {(0, 0): 3})
    assert D.lines() == ["R 0 1 0 2 2", "I+ 1 2 1", "I- 0 0 3"]


def test_zigzag_wrapper_checks_type():
    L = random_ladder(1, 2, GF2, "qf")
    with pytest.raises(InvalidLadder):
        decompose_ladder_zigzag(L, "ff")
