import numpy as np

from barcodebases import GF2, QQ, Barcode, Matrix, PersistenceModule, PrimeField, canonical_matrices, comp_pers
from barcodebases.oracle import (
    barcode_via_ranks,
    endomorphism_dimension,
    hom_dimension,
    interval_module,
    random_barcode,
    random_basis_change,
    random_invertible,
    random_module,
    random_zigzag,
    rank_table,
    verify_reduction,
)
from barcodebases.stabiliser import stab_dimension

from conftest import intro_module


def test_rank_table_of_the_introductory_module():
    r = rank_table(intro_module())
    assert r(0, 3) == 1 and r(1, 3) == 2 and r(0, 1) == 2
    assert r(-1, 2) == 0 and r(2, 4) == 0


def test_rank_table_identity_and_zero(field):
    ident = PersistenceModule(field, (2, 2, 2), [Matrix.identity(field, 2)] * 2)
    assert all(ident_rank == 2 for ident_rank in rank_table(ident).ranks.values())
    zero = PersistenceModule(field, (2, 2, 2), [Matrix.zeros(field, 2, 2)] * 2)
    r = rank_table(zero)
    assert r(0, 1) == r(1, 2) == r(0, 2) == 0


def test_rank_table_is_monotone():
    for seed in range(100):
        m = random_module(seed, max_dim=4, max_length=5, field=PrimeField(3))
        r = rank_table(m)
        for (a, b), v in r.ranks.items():
            assert v <= min(m.dims[a], m.dims[b])
            assert r(a, b + 1) <= v if b < m.length else True
            assert r(a - 1, b) <= v if a > 0 else True


def test_oracle_on_the_introductory_module():
    assert barcode_via_ranks(intro_module()) == Barcode({(0, 1): 1, (0, 3): 1, (1, 3): 1})


def test_oracle_recovers_canonical_barcodes(field):
    for seed in range(40):
        bar = random_barcode(seed, 6, max_bars=5, max_mult=3)
        assert barcode_via_ranks(canonical_matrices(bar, 6, field)) == bar


def test_oracle_multiplicities_are_nonnegative():
    for seed in range(1000):
        barcode_via_ranks(random_module(seed, max_dim=4, max_length=4, field=GF2, density=0.5))


def test_generators_are_deterministic_and_bounded():
    a = random_module(42, max_dim=5, max_length=6, field=QQ)
    b = random_module(42, max_dim=5, max_length=6, field=QQ)
    assert a == b
    assert a.length <= 6 and all(0 <= n <= 5 for n in a.dims)
    assert a.validate() == []
    z = random_zigzag(5, max_dim=3, max_length=6)
    assert z == random_zigzag(5, max_dim=3, max_length=6)
    assert z.validate() == []


def test_random_basis_changes_are_invertible(field):
    g = random_basis_change(9, field, (0, 1, 4, 3))
    assert g.certify()
    rng = np.random.default_rng(0)
    g1, h1 = random_invertible(rng, field, 5)
    from barcodebases import multiply

    assert multiply(h1, g1) == Matrix.identity(field, 5)


def test_verify_flags_a_tampered_result():
    m = random_module(8, max_dim=4, field=PrimeField(5), length=3)
    res = comp_pers(m)
    assert verify_reduction(m, res) == []
    bad = list(res.reduced)
    bad[1] = bad[1].copy()
    bad[1].a[0, 0] = 1 - bad[1].a[0, 0]
    res.reduced = tuple(bad)
    problems = verify_reduction(m, res)
    assert problems and "A_2" in problems[0]


def test_verify_all_forward_zigzag_equals_plain():
    m = random_module(4, max_dim=4, field=GF2, length=4)
    assert verify_reduction(m, comp_pers(m), "ffff") == verify_reduction(m, comp_pers(m)) == []


def test_hom_dimension_between_interval_modules():
    assert hom_dimension(interval_module((1, 3), 3), interval_module((0, 2), 3)) == 1
    assert hom_dimension(interval_module((0, 2), 3), interval_module((1, 3), 3)) == 0
    assert hom_dimension(interval_module((0, 0), 2), interval_module((1, 1), 2)) == 0


def test_endomorphism_dimension_equals_stabiliser_formula():
    for seed in range(30):
        bar = random_barcode(seed, 4, max_bars=4, max_mult=2)
        assert endomorphism_dimension(canonical_matrices(bar, 4, GF2)) == stab_dimension(bar)
