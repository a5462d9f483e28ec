"""Reduction of persistence modules to barcode form with the change of basis.

The engine grows a reduced prefix one matrix at a time. Each new matrix is
row reduced, and every remaining non-pivot entry is cleared by a column
operation whose side effect on the previous matrix is repaired by a cascade
of further column operations down the sequence. The accumulated basis change
``g`` satisfies ``g_i A_i g_{i-1}^-1 = reduced_i`` exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence

import numpy as np

from .field import Field
from .matrix import Matrix, inverse, is_barcode_form, multiply, rref_full
from .persistence import (
    Barcode,
    BarChain,
    BasisChange,
    PersistenceModule,
    chains_to_barcode,
    trace_chains,
    validate,
)


@dataclass
class OpCounter:
    """Counts of the work done by a reduction.

    Attributes:
        row_ops: Elementary row operations applied to structure matrices.
        col_ops: Elementary column operations applied to structure matrices.
        scalar_mults: Scalar multiplications spent in those operations.
        basis_ops: Elementary updates of the basis-change components.
    """

    row_ops: int = 0
    col_ops: int = 0
    scalar_mults: int = 0
    basis_ops: int = 0

    @property
    def elementary(self) -> int:
        return self.row_ops + self.col_ops


@dataclass
class ReductionResult:
    """Output of a reduction.

    Attributes:
        field: Scalar field.
        dims: Dimension vector (unchanged by the reduction).
        reduced: Matrices in (zigzag) barcode form.
        change: Basis change carrying the input to ``reduced``.
        op_count: Work counters.
        tau: Type string of the module.
        trace: Elementary operations in order, when requested.
    """

    field: Field
    dims: tuple[int, ...]
    reduced: tuple[Matrix, ...]
    change: BasisChange
    op_count: OpCounter
    tau: str
    trace: Optional[list[tuple]] = None

    @property
    def matrices(self) -> tuple[Matrix, ...]:
        return self.reduced

    @cached_property
    def chains(self) -> list[BarChain]:
        return trace_chains(self.reduced, self.dims, self.tau)

    @property
    def barcode(self) -> Barcode:
        return chains_to_barcode(self.chains)

    def module(self):
        if "q" in self.tau:
            from .zigzag.module import ZigzagModule

            return ZigzagModule(self.field, self.dims, self.tau, self.reduced)
        return PersistenceModule(self.field, self.dims, self.reduced)


class Workspace:
    """Mutable state of a running reduction: matrices, basis change, counters.

    ``mats[i]`` is the arrow between ``V_i`` and ``V_{i+1}``; ``g[s]`` and
    ``ginv[s]`` are the basis change on ``V_s`` and its inverse.
    """

    def __init__(self, fld: Field, tau: str, trace: bool = False):
        self.field = fld
        self.tau = tau
        self.mats: list[Matrix] = []
        self.g: list[Matrix] = []
        self.ginv: list[Matrix] = []
        self.count = OpCounter()
        self.trace: Optional[list[tuple]] = [] if trace else None

    def row(self, i: int, p: int, q: int, lam) -> None:
        """Row(p) += lam Row(q) on ``mats[i]``."""
        A = self.mats[i]
        A.add_row(p, q, lam)
        self.count.row_ops += 1
        self.count.scalar_mults += A.cols
        if self.trace is not None:
            self.trace.append(("row", i + 1, p, q, lam))

    def col(self, i: int, q: int, p: int, lam) -> None:
        """Col(q) += lam Col(p) on ``mats[i]``."""
        A = self.mats[i]
        A.add_col(q, p, lam)
        self.count.col_ops += 1
        self.count.scalar_mults += A.rows
        if self.trace is not None:
            self.trace.append(("col", i + 1, q, p, lam))

    def basis(self, s: int, a: int, b: int, lam) -> None:
        """``g_s <- e(a, b, lam) g_s``, keeping the inverse in step."""
        self.g[s].add_row(a, b, lam)
        self.ginv[s].add_col(b, a, -lam)
        self.count.basis_ops += 1
        if self.trace is not None:
            self.trace.append(("basis", s, a, b, lam))

    def result(self, dims: Sequence[int]) -> ReductionResult:
        change = BasisChange([g.copy() for g in self.g], [h.copy() for h in self.ginv])
        return ReductionResult(
            self.field,
            tuple(dims),
            tuple(A.copy() for A in self.mats),
            change,
            self.count,
            self.tau,
            self.trace,
        )


def _pivot_in_row(A: Matrix, r: int) -> int:
    return int(np.flatnonzero(A.a[r])[0])


def _cascade(ws: Workspace, i: int, r: int, q: int, p: int) -> None:
    """Clears ``mats[i][r, p]`` with the pivot at ``(r, q)``, repairing ``mats[:i]``."""
    while True:
        alpha = ws.mats[i][r, p]
        ws.col(i, p, q, -alpha)
        ws.basis(i, q, p, alpha)
        if i == 0:
            return
        B = ws.mats[i - 1]
        if not B.a[p].any():
            return
        c = _pivot_in_row(B, q)
        d = _pivot_in_row(B, p)
        ws.row(i - 1, q, p, alpha)
        i, r, q, p = i - 1, q, c, d


def _reduce_last(ws: Workspace) -> None:
    m = len(ws.mats) - 1
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
            if ws.mats[m].a[r, p] != 0:
                _cascade(ws, m, r, q, p)


def _workspace_from(matrices: Sequence[Matrix], g: BasisChange, tau: str) -> Workspace:
    fld = g[0].field if len(g) else matrices[0].field
    ws = Workspace(fld, tau)
    ws.mats = [A.copy() for A in matrices]
    ws.g = [x.copy() for x in g.components]
    ws.ginv = [x.copy() for x in g.inverses]
    return ws


def _require_barcode_prefix(matrices: Sequence[Matrix], upto: int) -> None:
    for i in range(upto):
        if is_barcode_form(matrices[i]) is None:
            raise ValueError(f"A_{i + 1} is not in barcode form")


def col_op_cascade(
    matrices: Sequence[Matrix], g: BasisChange, k: int, r: int, q: int, p: int
) -> tuple[tuple[Matrix, ...], BasisChange]:
    """Clears entry ``(r, p)`` of ``matrices[k]`` keeping earlier matrices in barcode form.

    The column operation on ``matrices[k]`` is a basis change on ``V_k``; it
    induces a row operation on ``matrices[k-1]``, whose damage is cleared by
    a column operation there, and so on until the induced row operation has
    no effect. ``g`` must already have components for ``V_0..V_k``; the
    returned basis change is ``g`` with the new operations multiplied in.

    Args:
        matrices: ``A_1..A_m`` (0-based list).
        g: Basis change with at least ``k + 1`` components.
        k: 0-based index of the matrix to clear in.
        r: Pivot row.
        q: Pivot column.
        p: Column of the entry to clear, ``p > q``.

    Raises:
        ValueError: if the preconditions fail.
    """
    _require_barcode_prefix(matrices, k)
    A = matrices[k]
    if not (0 <= q < p < A.cols and 0 <= r < A.rows):
        raise ValueError(f"need 0 <= q < p < {A.cols} and a valid row, got r={r}, q={q}, p={p}")
    col_q = A.a[:, q]
    if A.a[r, q] != 1 or np.count_nonzero(col_q) != 1:
        raise ValueError(f"no pivot at ({r}, {q}) of A_{k + 1}")
    if A.a[r, p] == 0:
        raise ValueError(f"entry ({r}, {p}) of A_{k + 1} is already zero")
    ws = _workspace_from(matrices, g, "f" * len(matrices))
    _cascade(ws, k, r, q, p)
    return tuple(ws.mats), BasisChange(ws.g, ws.ginv)


def reduce_last(matrices: Sequence[Matrix], g: BasisChange) -> tuple[tuple[Matrix, ...], BasisChange]:
    """Brings the last matrix into barcode form without disturbing the others.

    Args:
        matrices: ``A_1..A_m`` with ``A_1..A_{m-1}`` in barcode form.
        g: Basis change on ``V_0..V_{m-1}``; a component for ``V_m`` is appended.

    Raises:
        ValueError: if the prefix is not in barcode form or ``g`` has the wrong length.
    """
    if len(g) != len(matrices):
        raise ValueError(f"basis change needs {len(matrices)} components, has {len(g)}")
    _require_barcode_prefix(matrices, len(matrices) - 1)
    ws = _workspace_from(matrices, g, "f" * len(matrices))
    _reduce_last(ws)
    return tuple(ws.mats), BasisChange(ws.g, ws.ginv)


def comp_pers(
    module: PersistenceModule,
    trace: bool = False,
    on_prefix: Optional[Callable[[int, tuple[Matrix, ...]], None]] = None,
) -> ReductionResult:
    """Reduces a persistence module to barcode form.

    Args:
        module: The module to reduce.
        trace: Record every elementary operation in ``result.trace``.
        on_prefix: Called as ``on_prefix(m, prefix)`` after the first ``m``
            matrices have been brought into barcode form.

    Returns:
        A :class:`ReductionResult` with ``apply_basis_change(change, A) == reduced``.

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
        ws.mats.append(A.copy() if i == 0 else multiply(A, ws.ginv[i]))
        _reduce_last(ws)
        if on_prefix is not None:
            on_prefix(i + 1, tuple(M.copy() for M in ws.mats))
    return ws.result(module.dims)


def extract_barcode(module_or_matrices, dims: Optional[Sequence[int]] = None) -> Barcode:
    """Reads the barcode off a module whose matrices are in barcode form.

    Args:
        module_or_matrices: A module, a :class:`ReductionResult` or a matrix
            sequence.
        dims: Dimension vector; needed only for a bare empty sequence.

    Raises:
        ValueError: if some matrix is not in barcode form.
    """
    if hasattr(module_or_matrices, "dims"):
        dims = module_or_matrices.dims
        matrices = module_or_matrices.matrices
    else:
        matrices = tuple(module_or_matrices)
        if dims is None:
            if not matrices:
                raise ValueError("dims are required for an empty matrix sequence")
            dims = [matrices[0].cols] + [A.rows for A in matrices]
    for i, A in enumerate(matrices, start=1):
        if is_barcode_form(A) is None:
            raise ValueError(f"A_{i} is not in barcode form")
    return chains_to_barcode(trace_chains(matrices, dims))


def ordering_change(result: ReductionResult) -> BasisChange:
    """Permutation basis change putting a reduced module into its ordered barcode basis.

    After applying it, the generators at each ``V_k`` are listed in the
    (zigzag) lexicographic order of their bars, so the matrices equal the
    canonical matrices of the barcode.
    """
    fld = result.field
    comps = []
    for k, n in enumerate(result.dims):
        P = Matrix.zeros(fld, n, n)
        new = 0
        for ch in result.chains:
            if ch.alive(k):
                P.a[new, ch.position(k)] = fld.one
                new += 1
        comps.append(P)
    return BasisChange(comps, [P.transpose() for P in comps])


def ordered_reduction(module) -> tuple[BasisChange, list[BarChain], Barcode]:
    """Reduces a (zigzag) module and orders its barcode basis.

    Returns:
        ``(g, chains, barcode)`` where ``g`` carries the input to the
        canonical ordered matrices and ``chains`` lists the bars in that
        order with their positions.
    """
    if "q" in module.tau:
        from .zigzag.reduction import comp_pers_zigzag

        res = comp_pers_zigzag(module)
    else:
        res = comp_pers(module)
    P = ordering_change(res)
    g = P @ res.change
    ordered = []
    for idx, ch in enumerate(res.chains):
        earlier = res.chains[:idx]
        pos = tuple(
            sum(1 for other in earlier if other.alive(k)) for k in range(ch.start, ch.end + 1)
        )
        ordered.append(BarChain(ch.start, ch.end, pos))
    return g, ordered, res.barcode
