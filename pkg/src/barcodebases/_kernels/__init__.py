"""Kernel backend selection.

Prime-field elimination and products run in the compiled ``_fastfp`` module
when it was built; otherwise, and always for the rationals, the pure-Python
reference kernels are used. The choice is made at import and can be
overridden with :func:`set_backend` (mainly for benchmarks and parity tests).
"""

from __future__ import annotations

from contextlib import contextmanager

import numpy as np

from . import _reference

try:
    from . import _fastfp
except ImportError:  # extension not built
    _fastfp = None

_backend = "compiled" if _fastfp is not None else "python"


def available_backends() -> tuple[str, ...]:
    return ("compiled", "python") if _fastfp is not None else ("python",)


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    """Selects ``"compiled"`` or ``"python"`` kernels for prime fields.

    Raises:
        ValueError: if the backend is unknown or was not built.
    """
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    _backend = name


@contextmanager
def use_backend(name: str):
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _compiled_for(field) -> bool:
    return _backend == "compiled" and getattr(field, "p", None) is not None


def rref(a: np.ndarray, field):
    if _compiled_for(field):
        return _fastfp.rref(a, field.p)
    return _reference.rref(a, field)


def rank(a: np.ndarray, field) -> int:
    if _compiled_for(field):
        return _fastfp.rank(a, field.p)
    return _reference.rank(a, field)


def matmul(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    # numpy's int64 product beats the compiled loop whenever it cannot
    # overflow, so the compiled loop only replaces the object-dtype fallback.
    if _compiled_for(field) and a.shape[1] * (field.p - 1) ** 2 >= 2**63 and a.shape[0] and b.shape[1]:
        return _fastfp.matmul(a, b, field.p)
    return _reference.matmul(a, b, field)
