"""Zigzag modules: matrix sequences whose arrows may point either way."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from ..field import GF2, Field
from ..matrix import Matrix, is_barcode_form, is_reversed_barcode_form
from ..orders import check_type
from ..persistence import (
    Barcode,
    BasisChange,
    PersistenceModule,
    apply_basis_change_typed,
    assemble,
    chains_to_barcode,
    instances,
    trace_chains,
    validate,
)


@dataclass(frozen=True)
class ZigzagModule:
    """A zigzag module of type ``tau``.

    Attributes:
        field: Scalar field.
        dims: Dimensions ``(n_0, ..., n_l)``.
        tau: Type string; ``tau[i-1]`` is arrow ``i``.
        matrices: ``A_1..A_l``; ``A_i`` is ``n_i x n_{i-1}`` for a forward
            arrow and ``n_{i-1} x n_i`` for a backward one.
    """

    field: Field
    dims: tuple[int, ...]
    tau: str
    matrices: tuple[Matrix, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(n) for n in self.dims))
        object.__setattr__(self, "matrices", tuple(self.matrices))
        check_type(self.tau)

    @property
    def length(self) -> int:
        return len(self.dims) - 1

    @classmethod
    def from_persistence(cls, module: PersistenceModule) -> "ZigzagModule":
        return cls(module.field, module.dims, module.tau, module.matrices)

    def validate(self) -> list[str]:
        return validate(self)

    def transformed(self, g: BasisChange) -> "ZigzagModule":
        return ZigzagModule(self.field, self.dims, self.tau, apply_basis_change_zigzag(g, self))


def apply_basis_change_zigzag(g: BasisChange, module) -> tuple[Matrix, ...]:
    """Direction-aware action of ``g`` on the matrices of ``module``."""
    return apply_basis_change_typed(g, module.matrices, module.tau)


def zigzag_form_violation(matrices: Sequence[Matrix], tau: str) -> Optional[int]:
    """1-based index of the first matrix not in its (reversed) barcode form, or ``None``."""
    for i, (A, arrow) in enumerate(zip(matrices, tau), start=1):
        check = is_barcode_form if arrow == "f" else is_reversed_barcode_form
        if check(A) is None:
            return i
    return None


def is_zigzag_barcode_form(module) -> bool:
    """Forward matrices in barcode form and backward ones in reversed barcode form."""
    return zigzag_form_violation(module.matrices, module.tau) is None


def extract_barcode_zigzag(module) -> Barcode:
    """Barcode of a zigzag module already in zigzag barcode form.

    Raises:
        ValueError: if the module is not in zigzag barcode form.
    """
    bad = zigzag_form_violation(module.matrices, module.tau)
    if bad is not None:
        raise ValueError(f"A_{bad} is not in zigzag barcode form")
    return chains_to_barcode(trace_chains(module.matrices, module.dims, module.tau))


def canonical_zigzag(bar: Barcode, tau: str, field: Field = GF2) -> ZigzagModule:
    """The zigzag module of a barcode in its ordered barcode basis.

    Bars are ordered by the zigzag lexicographic order of ``tau``.
    """
    check_type(tau)
    if bar and bar.max_end() > len(tau):
        raise ValueError(f"barcode does not fit in length {len(tau)}")
    dims, mats = assemble(instances(bar, tau), len(tau), tau, field)
    return ZigzagModule(field, dims, tau, mats)
