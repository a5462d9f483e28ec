"""Reduction of zigzag modules to zigzag barcode form.

A basis change ``e(a, b, lam)`` (``a < b``) on ``V_s`` clears an entry of the
matrix above ``V_s`` and acts on the matrix below it. If that action is not
trivial it creates exactly one offending entry, which is cleared by a basis
change ``e(c, d, lam')`` on ``V_{s-1}`` with ``c < d``, where ``c`` and ``d``
are the partners of ``a`` and ``b`` across the lower matrix. The four
combinations of arrow directions differ only in how partners are found and
which entry is created:

* lower arrow forward: rows ``a, b`` meet row operation ``Row(a) += lam Row(b)``;
  the new entry sits in row ``a`` at the pivot column of row ``b``;
* lower arrow backward: columns ``a, b`` meet ``Col(b) -= lam Col(a)``; the new
  entry sits in column ``b`` at the pivot row of column ``a``.
"""

from __future__ import annotations

import numpy as np

from ..matrix import Matrix, inverse, multiply, reversed_column_echelon_full, rref_full
from ..persistence import validate
from ..reduction import ReductionResult, Workspace
from .module import ZigzagModule


def _act_upper(ws: Workspace, s: int, a: int, b: int, lam) -> None:
    """Effect of ``e(a, b, lam)`` on ``V_s`` on the matrix ``mats[s]``."""
    if ws.tau[s] == "f":
        ws.col(s, b, a, -lam)
    else:
        ws.row(s, a, b, lam)


def _cascade(ws: Workspace, s: int, a: int, b: int, lam) -> None:
    while True:
        ws.basis(s, a, b, lam)
        _act_upper(ws, s, a, b, lam)
        if s == 0:
            return
        lower = ws.mats[s - 1]
        if ws.tau[s - 1] == "f":
            if not lower.a[b].any():
                return
            c = int(np.flatnonzero(lower.a[a])[0])
            d = int(np.flatnonzero(lower.a[b])[0])
            ws.row(s - 1, a, b, lam)
        else:
            if not lower.a[:, a].any():
                return
            c = int(np.flatnonzero(lower.a[:, a])[0])
            d = int(np.flatnonzero(lower.a[:, b])[0])
            ws.col(s - 1, b, a, -lam)
        s, a, b = s - 1, c, d


def _reduce_last(ws: Workspace) -> None:
    m = len(ws.mats) - 1
    if ws.tau[m] == "f":
        R, T, pivots, ops = rref_full(ws.mats[m])
        ws.mats[m] = R
        ws.g.append(T)
        ws.ginv.append(inverse(T))
        ws.count.row_ops += ops
        ws.count.scalar_mults += ops * (R.cols + T.cols)
        if ws.trace is not None:
            ws.trace.append(("rref", m + 1))
        for r, q in enumerate(pivots):
            for p in range(q + 1, R.cols):
                alpha = ws.mats[m][r, p]
                if alpha != 0:
                    _cascade(ws, m, q, p, alpha)
        return
    R, S, ops = reversed_column_echelon_full(ws.mats[m])
    ws.mats[m] = R
    ws.g.append(inverse(S))
    ws.ginv.append(S)
    ws.count.col_ops += ops
    ws.count.scalar_mults += ops * (R.rows + S.rows)
    if ws.trace is not None:
        ws.trace.append(("colech", m + 1))
    for q in range(R.cols):
        col = np.flatnonzero(R.a[:, q])
        if col.size == 0:
            continue
        r = int(col[-1])
        for s_ in range(r):
            alpha = ws.mats[m][s_, q]
            if alpha != 0:
                _cascade(ws, m, s_, r, -alpha)


def comp_pers_zigzag(module: ZigzagModule, trace: bool = False) -> ReductionResult:
    """Reduces a zigzag module to zigzag barcode form.

    Forward matrices end in barcode form, backward ones in reversed barcode
    form, and the returned basis change satisfies the direction-aware
    conjugation identity exactly. For an all-forward type the operations
    coincide with :func:`barcodebases.reduction.comp_pers`.

    Raises:
        ValueError: if the module is malformed.
    """
    problems = validate(module)
    if problems:
        raise ValueError(problems[0])
    fld = module.field
    ws = Workspace(fld, module.tau, trace)
    ws.g = [Matrix.identity(fld, module.dims[0])]
    ws.ginv = [Matrix.identity(fld, module.dims[0])]
    for i, A in enumerate(module.matrices):
        if i == 0:
            ws.mats.append(A.copy())
        elif module.tau[i] == "f":
            ws.mats.append(multiply(A, ws.ginv[i]))
        else:
            ws.mats.append(multiply(ws.g[i], A))
        _reduce_last(ws)
    return ws.result(module.dims)
