# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled F_p kernels mirroring ``_reference`` for prime fields."""

import numpy as np

ctypedef long long i64


cdef inline i64 _inv(i64 a, i64 p):
    cdef i64 t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref(a, i64 p):
    """Gauss-Jordan elimination mod p; same contract as the reference kernel."""
    cdef i64[:, ::1] R = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    T_arr = np.eye(m, dtype=np.int64)
    cdef i64[:, ::1] T = T_arr
    cdef Py_ssize_t r = 0, c, i, j
    cdef i64 f, s, tmp
    cdef long ops = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        i = r
        while i < m and R[i, c] == 0:
            i += 1
        if i == m:
            continue
        if i != r:
            for j in range(n):
                tmp = R[r, j]; R[r, j] = R[i, j]; R[i, j] = tmp
            for j in range(m):
                tmp = T[r, j]; T[r, j] = T[i, j]; T[i, j] = tmp
            ops += 1
        if R[r, c] != 1:
            s = _inv(R[r, c], p)
            for j in range(n):
                R[r, j] = R[r, j] * s % p
            for j in range(m):
                T[r, j] = T[r, j] * s % p
            ops += 1
        for i in range(m):
            if i == r or R[i, c] == 0:
                continue
            f = R[i, c]
            for j in range(n):
                R[i, j] = (R[i, j] + (p - f) * R[r, j]) % p
            for j in range(m):
                T[i, j] = (T[i, j] + (p - f) * T[r, j]) % p
            ops += 1
        pivots.append(c)
        r += 1
    return np.asarray(R), T_arr, pivots, ops


def rank(a, i64 p):
    """Rank mod p by forward elimination."""
    cdef i64[:, ::1] R = np.array(a, dtype=np.int64, order="C", copy=True)
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t r = 0, c, i, j
    cdef i64 f, inv, tmp
    for c in range(n):
        if r == m:
            break
        i = r
        while i < m and R[i, c] == 0:
            i += 1
        if i == m:
            continue
        if i != r:
            for j in range(n):
                tmp = R[r, j]; R[r, j] = R[i, j]; R[i, j] = tmp
        inv = _inv(R[r, c], p)
        for i in range(r + 1, m):
            if R[i, c] != 0:
                f = R[i, c] * inv % p
                for j in range(c, n):
                    R[i, j] = (R[i, j] + (p - f) * R[r, j]) % p
        r += 1
    return r


def matmul(a, b, i64 p):
    """Product mod p with reduction after every term (no overflow for p < 2^31)."""
    cdef i64[:, ::1] A = np.ascontiguousarray(a, dtype=np.int64)
    cdef i64[:, ::1] B = np.ascontiguousarray(b, dtype=np.int64)
    cdef Py_ssize_t m = A.shape[0], k = A.shape[1], n = B.shape[1]
    out_arr = np.zeros((m, n), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef Py_ssize_t i, j, t
    cdef i64 x
    for i in range(m):
        for t in range(k):
            x = A[i, t]
            if x == 0:
                continue
            for j in range(n):
                out[i, j] = (out[i, j] + x * B[t, j]) % p
    return out_arr
