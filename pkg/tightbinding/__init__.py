# Tight-binding - bound states, matrix elements and the deflated pencil solve

from tightbinding.elements import (
    FramedPair,
    PairOperator,
    cross_well_expectation,
    framed_pair,
    pair_operator,
    tb_h_element,
    tb_overlap,
    vc_diagonal,
    well_expectation,
)
from tightbinding.solver import assemble_tb, tb_basis, tb_error_estimate, tb_solve
from tightbinding.states import is_bound, isolated_well_states, pair_sector_states
from tightbinding.types import BoundState, TBDiagnostics, TBSystem

__all__ = [
    "BoundState",
    "FramedPair",
    "PairOperator",
    "TBDiagnostics",
    "TBSystem",
    "assemble_tb",
    "cross_well_expectation",
    "framed_pair",
    "is_bound",
    "isolated_well_states",
    "pair_operator",
    "pair_sector_states",
    "tb_basis",
    "tb_error_estimate",
    "tb_h_element",
    "tb_overlap",
    "tb_solve",
    "vc_diagonal",
    "well_expectation",
]
