"""Zigzag persistence: modules with arrows in both directions."""

from __future__ import annotations

from ..orders import (
    lex_tau,
    order_tau,
    order_tau_star,
    preceq_tau,
    strictly_nested_tau,
    tau_ranks,
    tau_star_ranks,
)
from .module import (
    ZigzagModule,
    apply_basis_change_zigzag,
    canonical_zigzag,
    extract_barcode_zigzag,
    is_zigzag_barcode_form,
)
from .reduction import comp_pers_zigzag
from ..ladder import LadderDecomposition, LadderModule, LadderResult, NestedBarsTau, decompose_ladder
from ..persistence import Barcode
from ..stabiliser import stab_dimension


__all__ = [
    "LadderDecomposition",
    "NestedBarsTau",
    "ZigzagModule",
    "apply_basis_change_zigzag",
    "canonical_zigzag",
    "comp_pers_zigzag",
    "decompose_ladder_zigzag",
    "extract_barcode_zigzag",
    "is_zigzag_barcode_form",
    "lex_tau",
    "order_tau",
    "order_tau_star",
    "preceq_tau",
    "stab_dimension_zigzag",
    "strictly_nested_tau",
    "tau_ranks",
    "tau_star_ranks",
]


def stab_dimension_zigzag(bar: Barcode, tau: str) -> int:
    """Stabiliser dimension of a zigzag module in barcode form of type ``tau``.

    Sums ``d_x d_y`` over ordered pairs of classes with ``x`` preceding ``y``
    in the twisted overlap relation, equal pairs included.
    """
    return stab_dimension(bar, tau)


def decompose_ladder_zigzag(L: LadderModule, tau: str | None = None) -> LadderResult:
    """Decomposes a map of zigzag modules of a common type.

    Args:
        L: The ladder; both modules carry the type.
        tau: Optional expected type, checked against the modules.

    Raises:
        InvalidLadder: if the types disagree or the maps do not commute.
        NestedBarsTau: if a barcode has a pair strictly nested with regard
            to the type.
        MatchingObstruction: if no legal sweep reaches a partial matching.
    """
    from ..ladder import InvalidLadder

    if tau is not None and L.tau != tau:
        raise InvalidLadder(f"ladder has type {L.tau!r}, expected {tau!r}")
    return decompose_ladder(L)
