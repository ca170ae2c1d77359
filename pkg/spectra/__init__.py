# Spectra - symmetry reductions, exact solvers and generalized eigenproblems

from spectra.brute import (
    GroundState,
    brute_force_ground_state,
    brute_force_spectrum,
    expand_radial_state,
)
from spectra.exact import (
    EigenResult,
    exact_low_pair,
    free_driver_spectrum,
    solve_radial,
    solve_single_well,
    solve_three_well,
    solve_two_well,
)
from spectra.geigen import DeflationStage, PencilResult, fix_heiberger, sym_eig
from spectra.sectors import SectorBlock
from spectra.symmetry import (
    PairFrame,
    SectorIndex,
    TripleFrame,
    count_triple_intersections,
    hamming_distance,
    intersection_tensor,
    ladder_coeffs,
    pair_frame,
    radial_to_pair,
    triple_frame,
)

__all__ = [
    "DeflationStage",
    "EigenResult",
    "GroundState",
    "PairFrame",
    "PencilResult",
    "SectorBlock",
    "SectorIndex",
    "TripleFrame",
    "brute_force_ground_state",
    "brute_force_spectrum",
    "count_triple_intersections",
    "exact_low_pair",
    "expand_radial_state",
    "fix_heiberger",
    "free_driver_spectrum",
    "hamming_distance",
    "intersection_tensor",
    "ladder_coeffs",
    "pair_frame",
    "radial_to_pair",
    "solve_radial",
    "solve_single_well",
    "solve_three_well",
    "solve_two_well",
    "sym_eig",
    "triple_frame",
]
