"""Persistence modules as matrix sequences, barcodes and the change-of-basis action.

A module of length ``l`` has spaces ``V_0..V_l`` of dimensions ``dims`` and
structure matrices ``matrices[i]`` for the arrow between ``V_i`` and
``V_{i+1}``. In the plain case every arrow is forward and ``matrices[i]`` has
shape ``dims[i+1] x dims[i]``. Zigzag modules reuse the same containers and
carry a type string (see :mod:`barcodebases.orders`).
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Optional, Sequence

from .field import GF2, Field
from .matrix import Matrix, inverse, multiply
from .orders import (
    Interval,
    as_interval,
    check_type,
    lex_key,
    lex_leq,
    preceq,
    strictly_nested,
)

__all__ = [
    "Interval",
    "Barcode",
    "PersistenceModule",
    "BasisChange",
    "BarChain",
    "validate",
    "apply_basis_change",
    "apply_basis_change_typed",
    "preceq",
    "lex_leq",
    "strictly_nested",
    "canonical_matrices",
    "trace_chains",
    "arrow_shape",
]


class Barcode(Mapping):
    """Multiset of intervals, stored as ``Interval -> multiplicity``.

    Iteration follows the lexicographic order of intervals. Zero counts are
    dropped; negative counts are rejected.

    Args:
        data: Mapping from intervals (or pairs) to counts, or an iterable of
            intervals where each occurrence counts once.
    """

    def __init__(self, data: Mapping | Iterable = ()):
        counts: dict[Interval, int] = {}
        items = data.items() if isinstance(data, Mapping) else ((x, 1) for x in data)
        for key, count in items:
            iv = as_interval(key)
            count = int(count)
            if count < 0:
                raise ValueError(f"negative multiplicity {count} for {iv}")
            if count:
                counts[iv] = counts.get(iv, 0) + count
        self._counts = dict(sorted(counts.items()))

    def __getitem__(self, key) -> int:
        return self._counts[Interval(*key)]

    def get(self, key, default=0):
        return self._counts.get(Interval(*key), default)

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._counts)

    def __len__(self) -> int:
        return len(self._counts)

    def __repr__(self) -> str:
        body = ", ".join(f"{iv}: {d}" for iv, d in self._counts.items())
        return f"Barcode({{{body}}})"

    def total(self) -> int:
        return sum(self._counts.values())

    def max_end(self) -> int:
        return max((iv.end for iv in self._counts), default=0)

    def classes(self, tau: Optional[str] = None) -> list[Interval]:
        """Intervals present, sorted by the (zigzag) lexicographic order."""
        return sorted(self._counts, key=lambda iv: lex_key(iv, tau))

    def census(self, length: int) -> tuple[int, ...]:
        """Dimension vector implied by the barcode: bars alive at each index."""
        dims = [0] * (length + 1)
        for iv, d in self._counts.items():
            if iv.end > length:
                raise ValueError(f"interval {iv} exceeds length {length}")
            for k in range(iv.start, iv.end + 1):
                dims[k] += d
        return tuple(dims)

    def lines(self, tau: Optional[str] = None) -> list[str]:
        """``"i j d"`` lines in (zigzag) lexicographic order."""
        return [f"{iv.start} {iv.end} {self._counts[iv]}" for iv in self.classes(tau)]


def arrow_shape(arrow: str, n_prev: int, n_next: int) -> tuple[int, int]:
    """Matrix shape of an arrow between spaces of dimension ``n_prev`` and ``n_next``."""
    return (n_next, n_prev) if arrow == "f" else (n_prev, n_next)


def _diagnose(dims: Sequence[int], matrices: Sequence[Matrix], tau: str, fld: Field) -> list[str]:
    problems = []
    if len(dims) == 0:
        return ["dims must list at least n_0"]
    if any(n < 0 for n in dims):
        problems.append("dimensions must be non-negative")
    length = len(dims) - 1
    if len(matrices) != length:
        problems.append(f"expected {length} matrices for {len(dims)} spaces, got {len(matrices)}")
        return problems
    if len(tau) != length:
        problems.append(f"type has length {len(tau)}, expected {length}")
        return problems
    for i, (A, arrow) in enumerate(zip(matrices, tau), start=1):
        if A.field != fld:
            problems.append(f"A_{i} is over {A.field}, expected {fld}")
            continue
        rows, cols = arrow_shape(arrow, dims[i - 1], dims[i])
        rname, cname = (f"n_{i}", f"n_{i-1}") if arrow == "f" else (f"n_{i-1}", f"n_{i}")
        if A.rows != rows:
            problems.append(f"A_{i} row count {A.rows} != {rname} = {rows}")
        if A.cols != cols:
            problems.append(f"A_{i} column count {A.cols} != {cname} = {cols}")
    return problems


@dataclass(frozen=True)
class PersistenceModule:
    """A persistence module ``F^{n_0} -> F^{n_1} -> ... -> F^{n_l}``.

    Attributes:
        field: Scalar field shared by all matrices.
        dims: Dimensions ``(n_0, ..., n_l)``.
        matrices: ``A_1..A_l`` with ``A_i`` of shape ``n_i x n_{i-1}``.
    """

    field: Field
    dims: tuple[int, ...]
    matrices: tuple[Matrix, ...] = dc_field(default=())

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        object.__setattr__(self, "matrices", tuple(self.matrices))

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    @property
    def tau(self) -> str:
        return "f" * self.length

    def validate(self) -> list[str]:
        return validate(self)

    def transformed(self, g: "BasisChange") -> "PersistenceModule":
        return PersistenceModule(self.field, self.dims, apply_basis_change(g, self.matrices))


def validate(module) -> list[str]:
    """Shape diagnostics for a (zigzag) module; an empty list means valid."""
    tau = getattr(module, "tau", "f" * (len(module.dims) - 1))
    return _diagnose(module.dims, module.matrices, tau, module.field)


class BasisChange:
    """An element ``g = (g_0, ..., g_l)`` of the product of general linear groups.

    Args:
        components: Square invertible matrices.
        inverses: Optional precomputed inverses. When omitted they are
            computed, which also certifies invertibility.

    Raises:
        SingularMatrixError: if a component is singular.
    """

    __slots__ = ("components", "_inverses")

    def __init__(self, components: Sequence[Matrix], inverses: Optional[Sequence[Matrix]] = None):
        self.components = tuple(components)
        for i, g in enumerate(self.components):
            if g.rows != g.cols:
                raise ValueError(f"component g_{i} is not square: {g.shape}")
        if inverses is None:
            inverses = [inverse(g) for g in self.components]
        self._inverses = tuple(inverses)

    @classmethod
    def identity(cls, field: Field, dims: Sequence[int]) -> "BasisChange":
        ids = [Matrix.identity(field, n) for n in dims]
        return cls(ids, [g.copy() for g in ids])

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(g.rows for g in self.components)

    @property
    def inverses(self) -> tuple[Matrix, ...]:
        return self._inverses

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> Matrix:
        return self.components[i]

    def inverse(self) -> "BasisChange":
        return BasisChange(self._inverses, self.components)

    def __matmul__(self, other: "BasisChange") -> "BasisChange":
        """Componentwise product ``(g h)_i = g_i h_i``."""
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch {self.dims} vs {other.dims}")
        comps = [multiply(a, b) for a, b in zip(self.components, other.components)]
        invs = [multiply(b, a) for a, b in zip(self._inverses, other._inverses)]
        return BasisChange(comps, invs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BasisChange):
            return NotImplemented
        return self.components == other.components

    __hash__ = None  # type: ignore[assignment]

    def certify(self) -> bool:
        """Checks every stored inverse by multiplication."""
        for g, h in zip(self.components, self._inverses):
            if multiply(g, h) != Matrix.identity(g.field, g.rows):
                return False
        return True

    def __repr__(self) -> str:
        return f"BasisChange(dims={self.dims})"


def apply_basis_change_typed(g: BasisChange, matrices: Sequence[Matrix], tau: str) -> tuple[Matrix, ...]:
    """Direction-aware action: forward ``g_i A_i g_{i-1}^-1``, backward ``g_{i-1} A_i g_i^-1``."""
    if len(g) != len(matrices) + 1:
        raise ValueError(f"basis change has {len(g)} components for {len(matrices)} matrices")
    check_type(tau, len(matrices))
    out = []
    for i, (A, arrow) in enumerate(zip(matrices, tau)):
        if arrow == "f":
            out.append(multiply(multiply(g[i + 1], A), g.inverses[i]))
        else:
            out.append(multiply(multiply(g[i], A), g.inverses[i + 1]))
    return tuple(out)


def apply_basis_change(g: BasisChange, matrices: Sequence[Matrix]) -> tuple[Matrix, ...]:
    """The action ``(gA)_i = g_i A_i g_{i-1}^-1`` on a forward matrix sequence."""
    return apply_basis_change_typed(g, matrices, "f" * len(matrices))


# -- pivot chains ------------------------------------------------------------


@dataclass(frozen=True)
class BarChain:
    """One bar of a module in (zigzag) barcode form.

    Attributes:
        start: First index of the bar.
        end: Last index of the bar.
        positions: Basis index of the bar's generator in ``V_start..V_end``.
    """

    start: int
    end: int
    positions: tuple[int, ...]

    @property
    def interval(self) -> Interval:
        return Interval(self.start, self.end)

    def position(self, k: int) -> int:
        return self.positions[k - self.start]

    def alive(self, k: int) -> bool:
        return self.start <= k <= self.end


def _links(A: Matrix, arrow: str, index: int) -> dict[int, int]:
    nz = [(int(r), int(c)) for r, c in zip(*A.a.nonzero())]
    if any(A.a[r, c] != 1 for r, c in nz):
        raise ValueError(f"A_{index} has entries other than 0 and 1")
    rows = [r for r, _ in nz]
    cols = [c for _, c in nz]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        raise ValueError(f"A_{index} has more than one nonzero in a row or column")
    if arrow == "f":
        return {c: r for r, c in nz}
    return {r: c for r, c in nz}


def trace_chains(
    matrices: Sequence[Matrix], dims: Sequence[int], tau: Optional[str] = None
) -> list[BarChain]:
    """Follows the pivot maps of 0/1 partial-matching matrices into bars.

    Each basis vector not hit from the previous space starts a bar, which
    continues while the next structure matrix links it onwards.

    Returns:
        Chains sorted by the (zigzag) lexicographic order of their interval,
        ties broken by the generator's position at the start index.

    Raises:
        ValueError: if some matrix is not a 0/1 partial matching.
    """
    length = len(dims) - 1
    tau = "f" * length if tau is None else tau
    links = [_links(A, arrow, i + 1) for i, (A, arrow) in enumerate(zip(matrices, tau))]
    hit = [set()] + [set(lk.values()) for lk in links]
    chains = []
    for k in range(length + 1):
        for x in range(dims[k]):
            if x in hit[k]:
                continue
            pos = [x]
            j = k
            while j < length and pos[-1] in links[j]:
                pos.append(links[j][pos[-1]])
                j += 1
            chains.append(BarChain(k, j, tuple(pos)))
    chains.sort(key=lambda ch: (lex_key(ch.interval, tau), ch.positions[0]))
    return chains


def chains_to_barcode(chains: Iterable[BarChain]) -> Barcode:
    counts: dict[Interval, int] = {}
    for ch in chains:
        counts[ch.interval] = counts.get(ch.interval, 0) + 1
    return Barcode(counts)


# -- canonical forms ----------------------------------------------------------


def instances(bar: Barcode, tau: Optional[str] = None) -> list[Interval]:
    """One entry per bar copy, ordered by the (zigzag) lexicographic order."""
    return [iv for iv in bar.classes(tau) for _ in range(bar[iv])]


def assemble(
    bars: Sequence[Interval], length: int, tau: str, fld: Field
) -> tuple[tuple[int, ...], tuple[Matrix, ...]]:
    """Dims and matrices of the direct sum of interval modules in the given bar order."""
    positions: list[dict[int, int]] = []
    dims = []
    for k in range(length + 1):
        pos = {}
        for idx, iv in enumerate(bars):
            if iv.start <= k <= iv.end:
                pos[idx] = len(pos)
        positions.append(pos)
        dims.append(len(pos))
    mats = []
    for k, arrow in enumerate(tau):
        rows, cols = arrow_shape(arrow, dims[k], dims[k + 1])
        A = Matrix.zeros(fld, rows, cols)
        for idx, p in positions[k].items():
            q = positions[k + 1].get(idx)
            if q is None:
                continue
            if arrow == "f":
                A.a[q, p] = fld.one
            else:
                A.a[p, q] = fld.one
        mats.append(A)
    return tuple(dims), tuple(mats)


def canonical_matrices(bar: Barcode, length: int, field: Field = GF2) -> PersistenceModule:
    """The module of a barcode in its ordered barcode basis.

    Bars are ordered lexicographically; copies of one interval are
    indistinguishable, so their order is their insertion order.

    Raises:
        ValueError: if an interval exceeds ``length``.
    """
    if bar and bar.max_end() > length:
        raise ValueError(f"barcode does not fit in length {length}")
    dims, mats = assemble(instances(bar), length, "f" * length, field)
    return PersistenceModule(field, dims, mats)
