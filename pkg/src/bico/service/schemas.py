"""Request/response models for the compute service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class HealthOut(BaseModel):
    status: str
    version: str


class UniformStateOut(BaseModel):
    phi1: float
    phi2: float
    mu: float
    h_density: float
    label: Literal["symmetric", "asymmetric"]


class UniformIn(BaseModel):
    density: float = Field(gt=0, description="prescribed total density phi1^2 + phi2^2")
    g: float
    amplitude: float = Field(ge=0, description="constant coupling strength |A|")
    oracle: bool = False
    resolution: int = Field(default=1_000_000, ge=1000)


class UniformOut(BaseModel):
    symmetric: UniformStateOut
    asymmetric: Optional[UniformStateOut]
    asymmetric_absent_reason: Optional[str]
    ground_state: UniformStateOut
    tie: bool
    oracle: Optional[UniformStateOut] = None


class TFIn(BaseModel):
    g: float
    amplitude: float = Field(ge=0)
    wavenumber: float = Field(gt=0)
    parity: Literal["odd", "even"]
    mu: float
    omega: float = Field(default=0.05, ge=0)
    total_norm: float = Field(default=2.41, gt=0)
    x_max: float = Field(default=25.0, gt=0)
    n_points: int = Field(default=1024, ge=16)


class ProfilePayload(BaseModel):
    profile_csv: str
    sidecar: dict


class SolveIn(BaseModel):
    g: float
    amplitude: float = Field(ge=0)
    wavenumber: float = Field(ge=0)
    parity: Literal["odd", "even"]
    omega: float = Field(default=0.05, ge=0)
    total_norm: float = Field(default=2.41, gt=0)
    x_max: float = Field(default=25.0, gt=0)
    n_points: int = Field(default=1024, ge=16)
    dtau: float = Field(default=1e-3, gt=0)
    tau_max: float = Field(default=500.0, gt=0)
    energy_tol: float = Field(default=1e-10, gt=0)
    residual_tol: float = Field(default=1e-6, gt=0)
    seed_kind: Literal["tf", "random", "constant"] = "tf"
    rng_seed: int = Field(default=0, ge=0)


class KinkReportOut(BaseModel):
    count: int
    positions: list[float]
    threshold_used: float
    parity_consistent: Optional[bool]


class SolveSummary(BaseModel):
    energy: float
    mu: float
    iterations: int
    converged: bool
    final_residual: float
    kinks: KinkReportOut


class SolveOut(ProfilePayload):
    summary: SolveSummary


class KinksIn(BaseModel):
    profile_csv: str
    sidecar: Optional[dict] = None
    rel_threshold: Optional[float] = Field(default=None, gt=0, lt=1)
    abs_threshold: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def _one_threshold(self):
        if self.rel_threshold is not None and self.abs_threshold is not None:
            raise ValueError("rel_threshold and abs_threshold are mutually exclusive")
        return self


class SweepIn(BaseModel):
    spec: dict
    workers: int = Field(default=1, ge=1)
    rng_seed: int = Field(default=0, ge=0)


class JobOut(BaseModel):
    job_id: str
    status: Literal["queued", "running", "done", "failed"]
    completed: int
    total: int
    error: Optional[str] = None


class MapPayload(BaseModel):
    map_csv: str
    sidecar: dict
