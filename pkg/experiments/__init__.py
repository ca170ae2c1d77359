# Experiments - s-grid sweeps, Grover prior, Ising mapping and random batches

from experiments.batch import generate_instance, run_random_batch
from experiments.grover import run_grover_prior, run_scaling
from experiments.ising import calibrate_depths, ising_hamiltonian, run_ising_map
from experiments.output import summary_path, write_rows, write_summary
from experiments.runner import gather_points, run_points
from experiments.sweep import check_method, run_solve, solve_point
from experiments.types import (
    BatchRow,
    GroverPriorParams,
    GroverRow,
    IsingMapParams,
    IsingRow,
    RandomBatchParams,
    ScalingParams,
    ScalingRow,
    SweepRow,
)

__all__ = [
    "BatchRow",
    "GroverPriorParams",
    "GroverRow",
    "IsingMapParams",
    "IsingRow",
    "RandomBatchParams",
    "ScalingParams",
    "ScalingRow",
    "SweepRow",
    "calibrate_depths",
    "check_method",
    "gather_points",
    "generate_instance",
    "ising_hamiltonian",
    "run_grover_prior",
    "run_ising_map",
    "run_points",
    "run_random_batch",
    "run_scaling",
    "run_solve",
    "solve_point",
    "summary_path",
    "write_rows",
    "write_summary",
]
