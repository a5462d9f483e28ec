"""Barcode bases for persistence and zigzag modules over exact fields."""

from ._kernels import available_backends, get_backend, set_backend, use_backend
from .field import GF2, QQ, Field, PrimeField, RationalField, parse_field
from .ladder import (
    InvalidLadder,
    LadderDecomposition,
    LadderModule,
    MatchingObstruction,
    NestedBars,
    NestedBarsTau,
    decompose_ladder,
    synthesize_ladder,
)
from .matrix import (
    Matrix,
    SingularMatrixError,
    col_op,
    inverse,
    is_barcode_form,
    is_reversed_barcode_form,
    matrix,
    multiply,
    rank,
    reversed_column_echelon,
    row_op,
    rref,
)
from .oracle import barcode_via_ranks, rank_table, verify_reduction
from .orders import Interval, lex_leq, lex_tau, preceq, preceq_tau, strictly_nested, strictly_nested_tau
from .persistence import Barcode, BasisChange, PersistenceModule, apply_basis_change, canonical_matrices
from .reduction import ReductionResult, comp_pers, extract_barcode
from .stabiliser import (
    StabiliserBlocks,
    blocks_multiply,
    blocks_to_element,
    element_to_blocks,
    is_stabiliser,
    stab_dimension,
)
from .zigzag import (
    ZigzagModule,
    comp_pers_zigzag,
    decompose_ladder_zigzag,
    extract_barcode_zigzag,
    stab_dimension_zigzag,
)

__all__ = [
    "Barcode",
    "BasisChange",
    "Field",
    "GF2",
    "Interval",
    "InvalidLadder",
    "LadderDecomposition",
    "LadderModule",
    "MatchingObstruction",
    "Matrix",
    "NestedBars",
    "NestedBarsTau",
    "PersistenceModule",
    "PrimeField",
    "QQ",
    "RationalField",
    "ReductionResult",
    "SingularMatrixError",
    "StabiliserBlocks",
    "ZigzagModule",
    "apply_basis_change",
    "available_backends",
    "barcode_via_ranks",
    "blocks_multiply",
    "blocks_to_element",
    "canonical_matrices",
    "col_op",
    "comp_pers",
    "comp_pers_zigzag",
    "decompose_ladder",
    "decompose_ladder_zigzag",
    "element_to_blocks",
    "extract_barcode",
    "extract_barcode_zigzag",
    "get_backend",
    "inverse",
    "is_barcode_form",
    "is_reversed_barcode_form",
    "is_stabiliser",
    "lex_leq",
    "lex_tau",
    "matrix",
    "multiply",
    "parse_field",
    "preceq",
    "preceq_tau",
    "rank",
    "rank_table",
    "reversed_column_echelon",
    "row_op",
    "rref",
    "set_backend",
    "stab_dimension",
    "stab_dimension_zigzag",
    "strictly_nested",
    "strictly_nested_tau",
    "synthesize_ladder",
    "use_backend",
    "verify_reduction",
]
