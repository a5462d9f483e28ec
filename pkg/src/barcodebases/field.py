"""Exact scalar fields: prime fields F_p and the rationals.

Scalars are plain Python objects: ``int`` in ``[0, p)`` for a prime field and
:class:`fractions.Fraction` for the rationals. A field object knows how to
normalize scalars and numpy arrays of scalars, and how to print and parse them.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Union

import numpy as np

Scalar = Union[int, Fraction]

_MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, math.isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


class Field:
    """Common interface of the exact fields used throughout the package."""

    dtype: Any = object
    zero: Scalar
    one: Scalar

    def __call__(self, x: Any) -> Scalar:
        raise NotImplementedError

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return self(a + b)

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self(a - b)

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return self(a * b)

    def neg(self, a: Scalar) -> Scalar:
        return self(-a)

    def inv(self, a: Scalar) -> Scalar:
        raise NotImplementedError

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def array(self, data: Any) -> np.ndarray:
        """Converts nested sequences or arrays into a normalized 2D array."""
        raise NotImplementedError

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        """Reduces an array produced by ring arithmetic back into the field."""
        raise NotImplementedError

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        raise NotImplementedError

    def format(self, x: Scalar) -> str:
        return str(x)

    def parse(self, token: str) -> Scalar:
        """Parses an integer or ``num/den`` token."""
        return self(Fraction(token))

    def random_scalar(self, rng: np.random.Generator, nonzero: bool = False) -> Scalar:
        raise NotImplementedError

    @property
    def header(self) -> str:
        """Text used for this field in module files."""
        raise NotImplementedError


class PrimeField(Field):
    """The prime field F_p.

    Args:
        p: A prime smaller than 2**31.

    Raises:
        ValueError: if ``p`` is not a prime in range.
    """

    dtype = np.int64

    def __init__(self, p: int):
        p = int(p)
        if not (p < _MAX_PRIME and _is_prime(p)):
            raise ValueError(f"characteristic must be a prime below 2^31, got {p}")
        self.p = p
        self.zero = 0
        self.one = 1

    def __call__(self, x: Any) -> int:
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator {x.denominator} vanishes mod {self.p}")
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, a: Scalar) -> int:
        a = self(a)
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(a, -1, self.p)

    def array(self, data: Any) -> np.ndarray:
        if isinstance(data, np.ndarray) and data.dtype != object:
            arr = data.astype(np.int64)
            return np.ascontiguousarray(arr % self.p)
        arr = np.array(data, dtype=object)
        if arr.size:
            arr = np.vectorize(self, otypes=[np.int64])(arr)
        return np.ascontiguousarray(arr.astype(np.int64))

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        return arr % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def random_scalar(self, rng: np.random.Generator, nonzero: bool = False) -> int:
        low = 1 if nonzero else 0
        return int(rng.integers(low, self.p))

    @property
    def header(self) -> str:
        return f"Fp {self.p}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("Fp", self.p))

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class RationalField(Field):
    """The rationals, with entries kept as reduced :class:`Fraction` objects."""

    dtype = object

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, x: Any) -> Fraction:
        if isinstance(x, (np.integer,)):
            x = int(x)
        return Fraction(x)

    def inv(self, a: Scalar) -> Fraction:
        a = Fraction(a)
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / a

    def array(self, data: Any) -> np.ndarray:
        src = np.array(data, dtype=object)
        out = np.empty(src.shape, dtype=object)
        for idx, v in np.ndenumerate(src):
            out[idx] = self(v)
        return out

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        # Fraction arithmetic is already exact and reduced; integers sneak in
        # only through numpy identities, so coerce them.
        out = np.empty(arr.shape, dtype=object)
        for idx, v in np.ndenumerate(arr):
            out[idx] = v if isinstance(v, Fraction) else Fraction(v)
        return out

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        out = np.empty((rows, cols), dtype=object)
        out.fill(Fraction(0))
        return out

    def format(self, x: Scalar) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def random_scalar(self, rng: np.random.Generator, nonzero: bool = False) -> Fraction:
        while True:
            num = int(rng.integers(-4, 5))
            den = int(rng.integers(1, 4))
            if num or not nonzero:
                return Fraction(num, den)

    @property
    def header(self) -> str:
        return "Q"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "RationalField()"


QQ = RationalField()
GF2 = PrimeField(2)


def parse_field(text: str) -> Field:
    """Parses a field spec such as ``"Fp 5"``, ``"F5"`` or ``"Q"``.

    Raises:
        ValueError: for unknown specs or non-prime characteristics.
    """
    parts = text.split()
    if parts == ["Q"]:
        return QQ
    if len(parts) == 2 and parts[0] == "Fp":
        try:
            return PrimeField(int(parts[1]))
        except ValueError as exc:
            raise ValueError(str(exc)) from None
    raise ValueError(f"unknown field spec {text!r}; expected 'Fp <prime>' or 'Q'")
