"""Independent checks and seeded random instances.

Nothing here calls the reduction engine. The barcode oracle uses only exact
products and ranks of composite maps, and the Hom-space solver sets up the
commuting-square equations directly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from .field import GF2, Field
from .matrix import Matrix, is_invertible, multiply, rank
from .orders import Interval, check_type
from .persistence import (
    Barcode,
    BasisChange,
    PersistenceModule,
    apply_basis_change_typed,
    arrow_shape,
    assemble,
    validate,
)

Seed = Union[int, np.random.Generator]


def _rng(seed: Seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


# -- rank invariant -----------------------------------------------------------


@dataclass(frozen=True)
class RankTable:
    """Ranks ``r(a, b)`` of the composites ``V_a -> V_b`` for ``a <= b``.

    Calling the table with indices outside ``0..l`` returns 0.
    """

    length: int
    ranks: dict[tuple[int, int], int]

    def __call__(self, a: int, b: int) -> int:
        if a < 0 or b > self.length or a > b:
            return 0
        return self.ranks[(a, b)]


def rank_table(module: PersistenceModule) -> RankTable:
    """Exact rank invariant of a plain persistence module."""
    length = module.length
    ranks = {}
    for a in range(length + 1):
        P = Matrix.identity(module.field, module.dims[a])
        ranks[(a, a)] = module.dims[a]
        for b in range(a + 1, length + 1):
            P = multiply(module.matrices[b - 1], P)
            ranks[(a, b)] = rank(P)
    return RankTable(length, ranks)


def barcode_via_ranks(module: PersistenceModule) -> Barcode:
    """Barcode by inclusion-exclusion on the rank invariant.

    ``d(i, j) = r(i, j) - r(i-1, j) - r(i, j+1) + r(i-1, j+1)``.

    Raises:
        ArithmeticError: if some multiplicity comes out negative, which can
            only happen through an arithmetic fault.
    """
    r = rank_table(module)
    counts = {}
    for i in range(module.length + 1):
        for j in range(i, module.length + 1):
            d = r(i, j) - r(i - 1, j) - r(i, j + 1) + r(i - 1, j + 1)
            if d < 0:
                raise ArithmeticError(f"negative multiplicity {d} at [{i},{j}]")
            if d:
                counts[Interval(i, j)] = d
    return Barcode(counts)


# -- Hom spaces -----------------------------------------------------------------


def _null_dim(columns: list[np.ndarray], n_eqs: int, fld: Field) -> int:
    if not columns:
        return 0
    if n_eqs == 0:
        return len(columns)
    M = Matrix(fld, np.stack(columns, axis=1))
    return len(columns) - rank(M)


def hom_dimension(source, target) -> int:
    """Dimension of the space of module maps ``source -> target``.

    Both arguments are plain or zigzag modules of the same type and field.
    The commuting squares are linear in the unknown maps; the dimension is
    the number of unknowns minus the rank of that linear system.
    """
    tau = source.tau
    if target.tau != tau or len(source.dims) != len(target.dims):
        raise ValueError("source and target must share length and type")
    fld = source.field
    n = source.dims
    m = target.dims
    slots = [(k, a, b) for k in range(len(n)) for a in range(m[k]) for b in range(n[k])]
    columns = []
    n_eqs = 0
    for k, a, b in slots:
        phi = [Matrix.zeros(fld, m[t], n[t]) for t in range(len(n))]
        phi[k].a[a, b] = fld.one
        parts = []
        for i, arrow in enumerate(tau):
            A = source.matrices[i]
            B = target.matrices[i]
            if arrow == "f":
                diff = multiply(phi[i + 1], A) - multiply(B, phi[i])
            else:
                diff = multiply(phi[i], A) - multiply(B, phi[i + 1])
            parts.append(diff.a.reshape(-1))
        col = np.concatenate(parts) if parts else np.zeros(0, dtype=fld.dtype)
        n_eqs = col.size
        columns.append(col)
    return _null_dim(columns, n_eqs, fld)


def endomorphism_dimension(module) -> int:
    """Dimension of the endomorphism algebra, equal to that of the stabiliser group."""
    return hom_dimension(module, module)


def interval_module(iv, length: int, tau: Optional[str] = None, field: Field = GF2):
    """The interval module ``I[i, j]`` (plain, or zigzag of type ``tau``)."""
    tau = "f" * length if tau is None else tau
    dims, mats = assemble([Interval(*iv)], length, tau, field)
    if "q" in tau:
        from .zigzag.module import ZigzagModule

        return ZigzagModule(field, dims, tau, mats)
    return PersistenceModule(field, dims, mats)


# -- random instances --------------------------------------------------------


def random_matrix(rng: np.random.Generator, fld: Field, rows: int, cols: int, density: float = 1.0) -> Matrix:
    M = Matrix.zeros(fld, rows, cols)
    for i in range(rows):
        for j in range(cols):
            if rng.random() < density:
                M.a[i, j] = fld.random_scalar(rng)
    return M


def random_module(
    seed: Seed,
    max_dim: int = 4,
    max_length: int = 4,
    field: Field = GF2,
    length: Optional[int] = None,
    dims: Optional[Sequence[int]] = None,
    density: float = 1.0,
) -> PersistenceModule:
    """A seeded random persistence module.

    Args:
        seed: Integer seed or a numpy generator.
        max_dim: Upper bound for each ``n_i`` (inclusive).
        max_length: Upper bound for ``l`` (inclusive) when ``length`` is unset.
        field: Scalar field.
        length: Fixes ``l``.
        dims: Fixes the dimension vector (overrides the bounds).
        density: Probability that an entry is drawn rather than left zero.
    """
    rng = _rng(seed)
    if dims is None:
        if length is None:
            length = int(rng.integers(0, max_length + 1))
        dims = [int(rng.integers(0, max_dim + 1)) for _ in range(length + 1)]
    dims = tuple(dims)
    mats = [random_matrix(rng, field, dims[i + 1], dims[i], density) for i in range(len(dims) - 1)]
    return PersistenceModule(field, dims, mats)


def random_type(seed: Seed, length: int) -> str:
    rng = _rng(seed)
    return "".join("fq"[int(x)] for x in rng.integers(0, 2, size=length))


def random_zigzag(
    seed: Seed,
    max_dim: int = 4,
    max_length: int = 4,
    field: Field = GF2,
    tau: Optional[str] = None,
    density: float = 1.0,
):
    """A seeded random zigzag module; the type is random unless given."""
    from .zigzag.module import ZigzagModule

    rng = _rng(seed)
    if tau is None:
        tau = random_type(rng, int(rng.integers(0, max_length + 1)))
    check_type(tau)
    dims = tuple(int(rng.integers(0, max_dim + 1)) for _ in range(len(tau) + 1))
    mats = []
    for i, arrow in enumerate(tau):
        rows, cols = arrow_shape(arrow, dims[i], dims[i + 1])
        mats.append(random_matrix(rng, field, rows, cols, density))
    return ZigzagModule(field, dims, tau, mats)


def random_invertible(rng: np.random.Generator, fld: Field, n: int) -> tuple[Matrix, Matrix]:
    """A random invertible matrix and its inverse, built from elementary factors.

    The matrix is a permutation followed by random scalings and row
    additions; the inverse is accumulated from the inverse factors, so both
    are exact by construction.
    """
    perm = rng.permutation(n)
    g = Matrix.identity(fld, n).permuted(row_perm=perm)
    ginv = g.transpose()
    for _ in range(2 * n * n):
        a, b = (int(x) for x in rng.integers(0, n, size=2)) if n else (0, 0)
        if a == b:
            mu = fld.random_scalar(rng, nonzero=True)
            g.scale_row(a, mu)
            ginv.scale_col(a, fld.inv(mu))
        else:
            lam = fld.random_scalar(rng)
            g.add_row(a, b, lam)
            ginv.add_col(b, a, -lam)
    return g, ginv


def random_basis_change(seed: Seed, field: Field, dims: Sequence[int]) -> BasisChange:
    """A seeded random element of the product of general linear groups."""
    rng = _rng(seed)
    pairs = [random_invertible(rng, field, n) for n in dims]
    return BasisChange([g for g, _ in pairs], [h for _, h in pairs])


def random_barcode(
    seed: Seed, length: int, max_bars: int = 4, max_mult: int = 2, min_bars: int = 0
) -> Barcode:
    """A seeded random barcode with intervals inside ``[0, length]``."""
    rng = _rng(seed)
    counts = {}
    for _ in range(int(rng.integers(min_bars, max_bars + 1))):
        i = int(rng.integers(0, length + 1))
        j = int(rng.integers(i, length + 1))
        counts[Interval(i, j)] = int(rng.integers(1, max_mult + 1))
    return Barcode(counts)


# -- certificates --------------------------------------------------------------


def verify_reduction(original, result, tau: Optional[str] = None) -> list[str]:
    """Checks a reduction result against its input.

    Checks (a) the conjugation identity, direction-aware for zigzag types,
    (b) the (zigzag) barcode-form predicates, (c) invertibility of every
    basis-change component, and (d) the dimension census of the barcode.

    Returns:
        Human-readable violations; empty when everything holds.
    """
    from .matrix import is_barcode_form, is_reversed_barcode_form
    from .persistence import chains_to_barcode, trace_chains

    tau = getattr(original, "tau", None) if tau is None else tau
    problems = list(validate(original))
    if problems:
        return problems
    g = result.change
    if len(g) != len(original.dims):
        return [f"basis change has {len(g)} components, expected {len(original.dims)}"]
    for k, comp in enumerate(g.components):
        if not is_invertible(comp):
            problems.append(f"g_{k} is not invertible")
    if problems:
        return problems
    conj = apply_basis_change_typed(g, original.matrices, tau)
    for i, (X, Y) in enumerate(zip(conj, result.reduced), start=1):
        if X != Y:
            problems.append(f"conjugation identity fails at A_{i}")
    for i, (Y, arrow) in enumerate(zip(result.reduced, tau), start=1):
        check = is_barcode_form if arrow == "f" else is_reversed_barcode_form
        if check(Y) is None:
            problems.append(f"A_{i} fails the {'barcode' if arrow == 'f' else 'reversed barcode'} form predicate")
    if problems:
        return problems
    bar = chains_to_barcode(trace_chains(result.reduced, original.dims, tau))
    if bar.census(len(original.dims) - 1) != tuple(original.dims):
        problems.append("barcode census does not match the dimension vector")
    return problems
