"""Pure-Python reference kernels.

These work for every supported field: int64 arrays reduced mod p for prime
fields and object arrays of Fractions for the rationals. The compiled module
``_fastfp`` mirrors :func:`rref`, :func:`rank` and :func:`matmul` for prime
fields step for step, so both backends return identical results and
operation counts.
"""

from __future__ import annotations

import numpy as np


def _modulus(field):
    return getattr(field, "p", None)


def _identity(field, n):
    out = field.zeros(n, n)
    for i in range(n):
        out[i, i] = field.one
    return out


def rref(a: np.ndarray, field):
    """Gauss-Jordan elimination to reduced row echelon form.

    Args:
        a: 2D array over ``field``; not modified.
        field: The scalar field.

    Returns:
        Tuple ``(R, T, pivots, ops)`` with ``T @ a == R``, ``pivots`` the pivot
        columns in order and ``ops`` the number of elementary row operations
        (swaps, scalings and row additions) performed.
    """
    p = _modulus(field)
    R = a.copy()
    m, n = R.shape
    T = _identity(field, m)
    pivots = []
    ops = 0
    r = 0
    for c in range(n):
        if r == m:
            break
        col = R[r:, c]
        hits = np.flatnonzero(col != 0)
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
            T[[r, i]] = T[[i, r]]
            ops += 1
        piv = R[r, c]
        if piv != 1:
            s = field.inv(piv)
            R[r] = R[r] * s
            T[r] = T[r] * s
            if p is not None:
                R[r] %= p
                T[r] %= p
            ops += 1
        for i in np.flatnonzero(R[:, c] != 0):
            i = int(i)
            if i == r:
                continue
            f = R[i, c]
            R[i] = R[i] - f * R[r]
            T[i] = T[i] - f * T[r]
            if p is not None:
                R[i] %= p
                T[i] %= p
            ops += 1
        pivots.append(c)
        r += 1
    return R, T, pivots, ops


def rank(a: np.ndarray, field) -> int:
    """Rank by forward elimination (no back substitution, no transform)."""
    p = _modulus(field)
    R = a.copy()
    m, n = R.shape
    r = 0
    for c in range(n):
        if r == m:
            break
        hits = np.flatnonzero(R[r:, c] != 0)
        if hits.size == 0:
            continue
        i = r + int(hits[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = field.inv(R[r, c])
        for i in range(r + 1, m):
            if R[i, c] != 0:
                f = R[i, c] * inv
                R[i] = R[i] - f * R[r]
                if p is not None:
                    R[i] %= p
        r += 1
    return r


def matmul(a: np.ndarray, b: np.ndarray, field) -> np.ndarray:
    """Exact matrix product."""
    m, k = a.shape
    n = b.shape[1]
    if k == 0 or m == 0 or n == 0:
        return field.zeros(m, n)
    p = _modulus(field)
    if p is None:
        return a @ b
    if k * (p - 1) ** 2 < 2**63:
        return (a @ b) % p
    out = (a.astype(object) @ b.astype(object)) % p
    return out.astype(np.int64)
