"""Shared fixtures: the worked examples and the fields under test."""

import pytest

from barcodebases import GF2, QQ, PersistenceModule, PrimeField, matrix

FIELDS = [GF2, PrimeField(5), QQ]

EX27_INPUT = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 1], [0, 1, 1], [0, 0, 0]],
]
EX27_OUTPUT = [
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    [[1, 0, 0], [0, 1, 0], [0, 0, 0]],
]

INTRO_MATRICES = [
    [[1, 0], [0, 1], [0, 0]],
    [[0, 1, 0], [0, 0, 1]],
    [[1, 0], [0, 1]],
]


def ex27_module(field=QQ):
    return PersistenceModule(field, (3, 3, 3, 3), [matrix(A, field) for A in EX27_INPUT])


def intro_module(field=GF2):
    return PersistenceModule(field, (2, 3, 2, 2), [matrix(A, field) for A in INTRO_MATRICES])


@pytest.fixture(params=FIELDS, ids=lambda f: f.header.replace(" ", ""))
def field(request):
    return request.param
