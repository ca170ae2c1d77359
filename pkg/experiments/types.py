"""Parameter records and output rows of the experiments."""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field, model_validator

from wells.errors import ValidationError
from wells.types import SolveMethod

_SOURCE = "experiments.types"


# Output rows


class SweepRow(BaseModel):
    """One s-grid point of a ``solve`` sweep; fields a method does not produce stay empty."""

    model_config = ConfigDict(frozen=True)

    s: float
    method: SolveMethod
    E0: float
    E1: float | None = None
    gap: float | None = None
    error_estimate: float | None = None
    gamma_tilde: float | None = None
    stable_dim: int | None = None
    resolved: bool | None = None


class GroverRow(BaseModel):
    """Minimum gaps for one prior distance R."""

    model_config = ConfigDict(frozen=True)

    n: int
    R: int
    probability: float
    exact_gap: float
    exact_s: float
    tb0_grid_gap: float | None = None
    tb0_grid_s: float | None = None
    tb0_gap_at_exact_s: float | None = None
    tb0_error_estimate: float | None = None
    baseline_gap: float


class ScalingRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int
    scaled_gap: float
    log2_scaled_gap: float
    baseline_gap: float


class IsingRow(BaseModel):
    """Calibrated well and ground-state probabilities for one Ising basis state."""

    model_config = ConfigDict(frozen=True)

    state: str
    center: str
    depth: float
    target_diagonal: float
    effective_diagonal: float
    p_effective: float
    p_ising: float
    p_adiabatic: float | None = None


class BatchRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    run: int
    n: int
    K: int
    s: float
    oracle: SolveMethod
    oracle_gap: float
    tb_gap: float | None = None
    error_estimate: float | None = None
    gamma_tilde: float | None = None
    relative_error: float | None = None
    relative_estimate: float | None = None
    resolved: bool = False


# Experiment parameters


class GroverPriorParams(BaseModel):
    """Marked item (depth -1, radius 0, ramped up) plus a ramped-down prior well at distance R."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=20, ge=4)
    distances: tuple[int, ...] | None = Field(
        default=None, description="Prior distances R; all of 0..n when omitted"
    )
    prior_depth: float = Field(default=-1.0, lt=0.0)
    prior_radius: int = Field(default=0, ge=0)
    s_count: int = Field(default=33, ge=3)
    refine: bool = True
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)

    @model_validator(mode="after")
    def check_distances(self) -> GroverPriorParams:
        for R in self.distances or ():
            if not 0 <= R <= self.n:
                raise ValidationError(
                    f"prior distance R={R} outside [0, {self.n}]",
                    source_module=_SOURCE,
                    field_name="R",
                    expected=f"0 <= R <= {self.n}",
                    received=str(R),
                    validation_rule="distance_range",
                )
        if self.prior_radius > self.n:
            raise ValidationError(
                f"prior radius {self.prior_radius} exceeds n={self.n}",
                source_module=_SOURCE,
                field_name="prior_radius",
                expected=f"<= {self.n}",
                received=str(self.prior_radius),
                validation_rule="radius_range",
            )
        return self

    def distance_list(self) -> list[int]:
        return list(self.distances) if self.distances is not None else list(range(self.n + 1))


class ScalingParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    n_min: int = Field(default=10, ge=4)
    n_max: int = Field(default=20, ge=4)
    prior_depth: float = Field(default=-1.0, lt=0.0)
    prior_radius: int = Field(default=0, ge=0)
    s_count: int = Field(default=33, ge=3)

    @model_validator(mode="after")
    def check_range(self) -> ScalingParams:
        if self.n_max < self.n_min:
            raise ValidationError(
                "n_max must not be below n_min",
                source_module=_SOURCE,
                field_name="n_max",
                expected=f">= {self.n_min}",
                received=str(self.n_max),
                validation_rule="n_range",
            )
        return self


class IsingMapParams(BaseModel):
    """Ising model H_I = -sum J_ij Z_i Z_j - sum B_i X_i - alpha, mapped onto 2^L point wells."""

    model_config = ConfigDict(frozen=True)

    L: int = Field(default=3, ge=1, le=4)
    J: float = 1.0
    B: float = 0.015
    couplings: tuple[tuple[float, ...], ...] | None = Field(
        default=None, description="Full L x L coupling matrix; overrides J"
    )
    field_strengths: tuple[float, ...] | None = Field(
        default=None, description="Per-spin B_i; overrides B"
    )
    alpha: float = 30.0
    s_star: float = Field(default=0.95, gt=0.0, le=1.0)
    n: int = Field(default=10, ge=1)
    m: int = Field(default=3, ge=1)
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)
    tolerance: float = Field(default=1e-10, gt=0.0)
    max_iterations: int = Field(default=100, ge=1)

    @model_validator(mode="after")
    def check_layout(self) -> IsingMapParams:
        if self.m * self.L > self.n:
            raise ValidationError(
                f"m*L={self.m * self.L} spins do not fit on n={self.n} qubits",
                source_module=_SOURCE,
                field_name="m",
                expected=f"m*L <= {self.n}",
                received=str(self.m * self.L),
                validation_rule="encoding_fits",
            )
        if self.couplings is not None and (
            len(self.couplings) != self.L or any(len(row) != self.L for row in self.couplings)
        ):
            raise ValidationError(
                "coupling matrix must be L x L",
                source_module=_SOURCE,
                field_name="couplings",
                expected=f"{self.L}x{self.L}",
                validation_rule="coupling_shape",
            )
        if self.field_strengths is not None and len(self.field_strengths) != self.L:
            raise ValidationError(
                "one field value is needed per spin",
                source_module=_SOURCE,
                field_name="field_strengths",
                expected=str(self.L),
                received=str(len(self.field_strengths)),
                validation_rule="field_count",
            )
        return self

    def coupling_matrix(self) -> list[list[float]]:
        if self.couplings is not None:
            return [list(row) for row in self.couplings]
        return [[0.0 if i == j else self.J for j in range(self.L)] for i in range(self.L)]

    def field_vector(self) -> list[float]:
        return list(self.field_strengths) if self.field_strengths is not None else [self.B] * self.L


class RandomBatchParams(BaseModel):
    """Random point-well instances compared against the exact or brute-force oracle."""

    model_config = ConfigDict(frozen=True)

    runs: int = Field(default=200, ge=1)
    n_min: int = Field(default=4, ge=2)
    n_max: int = Field(default=10, ge=2)
    K_min: int = Field(default=2, ge=1)
    K_max: int = Field(default=10, ge=1)
    depth_min: float = Field(default=-5.99, lt=0.0)
    depth_max: float = Field(default=-1.0, lt=0.0)
    s_start: float = Field(default=0.15, ge=0.0, le=1.0)
    s_stop: float = Field(default=0.95, ge=0.0, le=1.0)
    s_count: int = Field(default=17, ge=1)
    epsilon: float = Field(default=0.1, gt=0.0, lt=1.0)
    seed: int = 0

    @model_validator(mode="after")
    def check_ranges(self) -> RandomBatchParams:
        for low, high, name in (
            (self.n_min, self.n_max, "n"),
            (self.K_min, self.K_max, "K"),
            (self.depth_min, self.depth_max, "depth"),
        ):
            if high < low:
                raise ValidationError(
                    f"{name} range is empty: [{low}, {high}]",
                    source_module=_SOURCE,
                    field_name=name,
                    expected="min <= max",
                    received=f"[{low}, {high}]",
                    validation_rule="range_order",
                )
        if self.n_max > 12 and self.K_max > 3:
            raise ValidationError(
                "instances with more than 3 wells need the brute-force oracle (n <= 12)",
                source_module=_SOURCE,
                field_name="n_max",
                expected="<= 12",
                received=str(self.n_max),
                validation_rule="oracle_reach",
            )
        return self
