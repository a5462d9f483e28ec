from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from barcodebases import GF2, QQ, PrimeField, parse_field


def test_prime_field_rejects_composites():
    for bad in (0, 1, 4, 9, 2**31 + 11):
        with pytest.raises(ValueError):
            PrimeField(bad)


def test_prime_field_reduces_integers_and_fractions():
    F5 = PrimeField(5)
    assert F5(7) == 2
    assert F5(-1) == 4
    assert F5(Fraction(1, 2)) == 3
    with pytest.raises(ZeroDivisionError):
        F5(Fraction(1, 5))


@given(st.integers(min_value=1, max_value=6), st.integers())
def test_inverse_in_prime_fields(k, x):
    F = PrimeField([2, 3, 5, 7, 11, 13][k - 1])
    x = F(x)
    if x == 0:
        with pytest.raises(ZeroDivisionError):
            F.inv(x)
    else:
        assert F.mul(x, F.inv(x)) == 1


@given(st.fractions().filter(lambda q: q != 0))
def test_rational_inverse(q):
    assert QQ.mul(q, QQ.inv(q)) == 1


def test_rational_format_is_reduced_with_positive_denominator():
    assert QQ.format(Fraction(-4, 6)) == "-2/3"
    assert QQ.format(Fraction(6, 3)) == "2"
    assert QQ.parse("-4/6") == Fraction(-2, 3)
    with pytest.raises(ValueError):
        QQ.parse("4/x")


def test_parse_field():
    assert parse_field("Fp 5") == PrimeField(5)
    assert parse_field("Q") == QQ
    assert parse_field("Fp 2") == GF2
    for bad in ("F 5", "Fp 6", "R", "Fp"):
        with pytest.raises(ValueError):
            parse_field(bad)


def test_headers_round_trip(field):
    assert parse_field(field.header) == field


def test_random_scalars_lie_in_the_field(field):
    rng = np.random.default_rng(0)
    for _ in range(50):
        x = field.random_scalar(rng, nonzero=True)
        assert x != 0
        assert field(x) == x
