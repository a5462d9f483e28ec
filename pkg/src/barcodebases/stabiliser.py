"""The stabiliser of a module in barcode form, parametrized by blocks.

For a module in (zigzag) barcode form, an element of the stabiliser is fixed
by one block per ordered pair of bar classes ``(x, y)`` with ``x`` equal to
or preceding ``y``. The diagonal blocks are invertible ``d_x x d_x`` matrices,
and the off-diagonal blocks are arbitrary ``d_x x d_y`` matrices. At each
space the element places the block entries at the positions of the
corresponding generators and zeros elsewhere.

Every function takes an optional ``tau``; ``None`` means all arrows forward.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .field import Field
from .matrix import Matrix, is_invertible, multiply
from .orders import Interval, preceq, preceq_tau
from .persistence import (
    Barcode,
    BarChain,
    BasisChange,
    apply_basis_change_typed,
    chains_to_barcode,
    trace_chains,
)


class NotAStabiliserError(ValueError):
    """Raised when a basis change does not fix the matrix sequence."""


def related(x, y, tau: Optional[str] = None) -> bool:
    """``x`` precedes ``y`` (plain or zigzag)."""
    return preceq(x, y) if tau is None or "q" not in tau else preceq_tau(x, y, tau)


def block_keys(bar: Barcode, tau: Optional[str] = None) -> list[tuple[Interval, Interval]]:
    """Ordered pairs of distinct classes ``(x, y)`` with ``x`` preceding ``y``."""
    classes = bar.classes(tau)
    return [(x, y) for x in classes for y in classes if x != y and related(x, y, tau)]


@dataclass
class StabiliserBlocks:
    """Block data of a stabiliser element.

    Attributes:
        context: The barcode; classes are ordered by the (zigzag)
            lexicographic order.
        field: Scalar field.
        diagonal: ``x -> d_x x d_x`` invertible matrix for each class.
        off_diagonal: ``(x, y) -> d_x x d_y`` matrix for each strict pair.
        tau: Type string, or ``None`` for plain modules.

    Raises:
        ValueError: if keys, shapes or invertibility are wrong.
    """

    context: Barcode
    field: Field
    diagonal: dict
    off_diagonal: dict = dc_field(default_factory=dict)
    tau: Optional[str] = None

    def __post_init__(self):
        self.diagonal = {Interval(*k): v for k, v in self.diagonal.items()}
        self.off_diagonal = {(Interval(*x), Interval(*y)): v for (x, y), v in self.off_diagonal.items()}
        if set(self.diagonal) != set(self.context):
            raise ValueError("diagonal blocks must be keyed by exactly the bar classes")
        if set(self.off_diagonal) != set(block_keys(self.context, self.tau)):
            raise ValueError("off-diagonal blocks must be keyed by exactly the strict related pairs")
        for x, M in self.diagonal.items():
            d = self.context[x]
            if M.shape != (d, d):
                raise ValueError(f"diagonal block {x} has shape {M.shape}, expected {(d, d)}")
            if not is_invertible(M):
                raise ValueError(f"diagonal block {x} is singular")
        for (x, y), M in self.off_diagonal.items():
            shape = (self.context[x], self.context[y])
            if M.shape != shape:
                raise ValueError(f"block {x},{y} has shape {M.shape}, expected {shape}")

    @classmethod
    def identity(cls, context: Barcode, field: Field, tau: Optional[str] = None) -> "StabiliserBlocks":
        diag = {x: Matrix.identity(field, d) for x, d in context.items()}
        off = {
            (x, y): Matrix.zeros(field, context[x], context[y]) for x, y in block_keys(context, tau)
        }
        return cls(context, field, diag, off, tau)

    def block(self, x, y) -> Optional[Matrix]:
        """Block for the pair ``(x, y)``; ``None`` when the pair carries no block."""
        if x == y:
            return self.diagonal[x]
        return self.off_diagonal.get((x, y))

    def free_parameters(self) -> int:
        """Number of scalar entries across all blocks."""
        total = sum(M.rows * M.cols for M in self.diagonal.values())
        return total + sum(M.rows * M.cols for M in self.off_diagonal.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StabiliserBlocks):
            return NotImplemented
        return (
            self.context == other.context
            and self.tau == other.tau
            and self.diagonal == other.diagonal
            and self.off_diagonal == other.off_diagonal
        )


def stab_dimension(bar: Barcode, tau: Optional[str] = None) -> int:
    """Dimension of the stabiliser: sum of ``d_x d_y`` over pairs with ``x`` preceding ``y``.

    Equal pairs are included.
    """
    classes = list(bar)
    return sum(bar[x] * bar[y] for x in classes for y in classes if related(x, y, tau))


def is_stabiliser(g: BasisChange, matrices: Sequence[Matrix], tau: Optional[str] = None) -> bool:
    """True iff ``g`` fixes the matrix sequence under the (direction-aware) action.

    Raises:
        ValueError: on shape mismatch.
    """
    tau = "f" * len(matrices) if tau is None else tau
    for i, (A, arrow) in enumerate(zip(matrices, tau)):
        src, dst = (i, i + 1) if arrow == "f" else (i + 1, i)
        if g[dst].rows != A.rows or g[src].rows != A.cols:
            raise ValueError(f"basis change does not fit A_{i + 1} of shape {A.shape}")
    return apply_basis_change_typed(g, matrices, tau) == tuple(matrices)


def _infer_dims(matrices: Sequence[Matrix], tau: Optional[str]) -> list[int]:
    if not matrices:
        raise ValueError("dims are required for an empty matrix sequence")
    tau = "f" * len(matrices) if tau is None else tau
    first = matrices[0]
    dims = [first.cols if tau[0] == "f" else first.rows]
    for A, arrow in zip(matrices, tau):
        dims.append(A.rows if arrow == "f" else A.cols)
    return dims


def _class_slots(chains: list[BarChain]) -> list[int]:
    """Index of each chain within its class, following chain order."""
    seen: dict[Interval, int] = {}
    out = []
    for ch in chains:
        out.append(seen.get(ch.interval, 0))
        seen[ch.interval] = out[-1] + 1
    return out


def blocks_to_element(
    b: StabiliserBlocks, matrices: Sequence[Matrix], dims: Optional[Sequence[int]] = None
) -> BasisChange:
    """Assembles the stabiliser element described by ``b``.

    Args:
        b: Block data whose context is the barcode of ``matrices``.
        matrices: A sequence in (zigzag) barcode form.
        dims: Dimension vector, required only when ``matrices`` is empty.

    Raises:
        ValueError: if the barcode of ``matrices`` differs from ``b.context``.
    """
    dims = _infer_dims(matrices, b.tau) if dims is None else dims
    chains = trace_chains(matrices, dims, b.tau)
    if chains_to_barcode(chains) != b.context:
        raise ValueError("block context does not match the barcode of the matrices")
    slots = _class_slots(chains)
    comps = []
    for k in range(len(dims)):
        alive = [(ch, s) for ch, s in zip(chains, slots) if ch.alive(k)]
        gk = Matrix.zeros(b.field, dims[k], dims[k])
        for x, sx in alive:
            for y, sy in alive:
                blk = b.block(x.interval, y.interval)
                if blk is not None:
                    gk.a[x.position(k), y.position(k)] = blk.a[sx, sy]
        comps.append(gk)
    return BasisChange(comps)


def element_to_blocks(
    g: BasisChange,
    matrices: Sequence[Matrix],
    dims: Optional[Sequence[int]] = None,
    tau: Optional[str] = None,
) -> StabiliserBlocks:
    """Reads the blocks of a stabiliser element.

    Besides the fixed-point check, this validates the structure directly:
    entries between bars that do not precede one another are zero, and each
    block reads the same at every space where both bars are alive.

    Raises:
        NotAStabiliserError: if ``g`` does not fix ``matrices`` or the block
            structure is violated.
    """
    if not is_stabiliser(g, matrices, tau):
        raise NotAStabiliserError("basis change does not fix the matrix sequence")
    dims = g.dims if dims is None else dims
    chains = trace_chains(matrices, dims, tau)
    slots = _class_slots(chains)
    context = chains_to_barcode(chains)
    fld = g[0].field
    blocks: dict[tuple[Interval, Interval], Matrix] = {}
    for x, sx in zip(chains, slots):
        for y, sy in zip(chains, slots):
            ks = range(max(x.start, y.start), min(x.end, y.end) + 1)
            if not ks:
                continue
            xi, yi = x.interval, y.interval
            vals = {g[k].a[x.position(k), y.position(k)] for k in ks}
            if xi != yi and not related(xi, yi, tau):
                if vals != {0}:
                    raise NotAStabiliserError(f"nonzero entry between unrelated bars {xi} and {yi}")
                continue
            if len(vals) != 1:
                raise NotAStabiliserError(f"block {xi},{yi} is not constant along the overlap")
            blk = blocks.setdefault((xi, yi), Matrix.zeros(fld, context[xi], context[yi]))
            blk.a[sx, sy] = vals.pop()
    diag = {x: blocks[(x, x)] for x in context}
    off = {key: blocks[key] for key in block_keys(context, tau)}
    return StabiliserBlocks(context, fld, diag, off, tau)


def blocks_multiply(a: StabiliserBlocks, b: StabiliserBlocks) -> StabiliserBlocks:
    """Block-level product: the ``(x, z)`` block is the sum of ``a[x, y] b[y, z]``
    over classes ``y`` with ``x`` preceding ``y`` and ``y`` preceding ``z``.

    Raises:
        ValueError: if the contexts differ.
    """
    if a.context != b.context or a.tau != b.tau or a.field != b.field:
        raise ValueError("blocks have different contexts")
    classes = a.context.classes(a.tau)
    fld = a.field

    def product(x, z) -> Matrix:
        acc = Matrix.zeros(fld, a.context[x], a.context[z])
        for y in classes:
            left = a.block(x, y)
            right = b.block(y, z)
            if left is not None and right is not None:
                acc = acc + multiply(left, right)
        return acc

    diag = {x: product(x, x) for x in classes}
    off = {(x, z): product(x, z) for x, z in block_keys(a.context, a.tau)}
    return StabiliserBlocks(a.context, fld, diag, off, a.tau)


def random_blocks(
    context: Barcode, field: Field, rng: np.random.Generator, tau: Optional[str] = None
) -> StabiliserBlocks:
    """Random block data with invertible diagonal blocks."""
    from .oracle import random_invertible, random_matrix

    diag = {x: random_invertible(rng, field, d)[0] for x, d in context.items()}
    off = {
        (x, y): random_matrix(rng, field, context[x], context[y]) for x, y in block_keys(context, tau)
    }
    return StabiliserBlocks(context, field, diag, off, tau)
