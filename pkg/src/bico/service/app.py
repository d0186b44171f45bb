"""FastAPI service wrapping the compute library.

Solves run synchronously in the request worker; sweeps run as background
jobs owned by an in-memory store and are polled by id.  Profile and map
payloads are returned as rendered file content so that clients write files
byte-identical to library-written ones.
"""

from __future__ import annotations

import logging
import threading
import uuid

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..fileio import (
    ProfileFormatError,
    map_sidecar,
    parse_profile_csv,
    profile_sidecar,
    render_map_csv,
    render_profile_csv,
)
from ..kinks import KinkThresholdConfig, ThresholdReference, count_kinks
from ..model import CouplingProfile, GroundStateResult, Parity, SystemParams, energy, make_grid
from ..solver import SeedKind, SolverConfig, SolverError, solve_ground_state
from ..sweep import SweepSpec, run_sweep
from ..thomas_fermi import TFDenominatorError, tf_pair
from ..uniform import (
    AbsentAsymmetric,
    UniformState,
    uniform_asymmetric,
    uniform_brute_force,
    uniform_ground_state,
    uniform_symmetric,
)
from .schemas import (
    HealthOut,
    JobOut,
    KinkReportOut,
    KinksIn,
    MapPayload,
    ProfilePayload,
    SolveIn,
    SolveOut,
    SolveSummary,
    SweepIn,
    TFIn,
    UniformIn,
    UniformOut,
    UniformStateOut,
)

log = logging.getLogger(__name__)


class SweepJob:
    def __init__(self, spec: SweepSpec, workers: int, rng_seed: int):
        self.id = uuid.uuid4().hex
        self.spec = spec
        self.workers = workers
        self.rng_seed = rng_seed
        self.status = "queued"
        self.completed = 0
        self.total = len(spec.amplitudes) * len(spec.wavenumbers)
        self.error: str | None = None
        self.table = None


class JobStore:
    def __init__(self):
        self._jobs: dict[str, SweepJob] = {}
        self._lock = threading.Lock()

    def submit(self, spec: SweepSpec, workers: int, rng_seed: int) -> SweepJob:
        job = SweepJob(spec, workers, rng_seed)
        with self._lock:
            self._jobs[job.id] = job
        thread = threading.Thread(target=self._run, args=(job,), daemon=True)
        thread.start()
        return job

    def get(self, job_id: str) -> SweepJob:
        with self._lock:
            job = self._jobs.get(job_id)
        if job is None:
            raise KeyError(job_id)
        return job

    def _run(self, job: SweepJob):
        job.status = "running"

        def progress(done, total):
            job.completed = done

        try:
            job.table = run_sweep(
                job.spec, workers=job.workers, rng_seed=job.rng_seed, progress=progress
            )
            job.status = "done"
        except Exception as exc:  # job errors surface through polling, not logs only
            log.exception("sweep job %s failed", job.id)
            job.error = str(exc)
            job.status = "failed"


def _state_out(state: UniformState) -> UniformStateOut:
    return UniformStateOut(
        phi1=state.phi1,
        phi2=state.phi2,
        mu=state.mu,
        h_density=state.h_density,
        label=state.label.value,
    )


def _job_out(job: SweepJob) -> JobOut:
    return JobOut(
        job_id=job.id,
        status=job.status,
        completed=job.completed,
        total=job.total,
        error=job.error,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="bico", version=__version__)
    jobs = JobStore()

    @app.get("/health", response_model=HealthOut)
    def health():
        return HealthOut(status="ok", version=__version__)

    @app.post("/uniform", response_model=UniformOut)
    def uniform(req: UniformIn):
        symm = uniform_symmetric(req.density, req.g, req.amplitude)
        asym = uniform_asymmetric(req.density, req.g, req.amplitude)
        selection = uniform_ground_state(req.density, req.g, req.amplitude)
        absent = isinstance(asym, AbsentAsymmetric)
        oracle = None
        if req.oracle:
            oracle = _state_out(uniform_brute_force(req.density, req.g, req.amplitude, req.resolution))
        return UniformOut(
            symmetric=_state_out(symm),
            asymmetric=None if absent else _state_out(asym),
            asymmetric_absent_reason=asym.reason.value if absent else None,
            ground_state=_state_out(selection.state),
            tie=selection.tie,
            oracle=oracle,
        )

    @app.post("/tf", response_model=ProfilePayload)
    def tf(req: TFIn):
        params = SystemParams(g=req.g, omega=req.omega, total_norm=req.total_norm)
        profile = CouplingProfile(
            amplitude=req.amplitude,
            wavenumber=req.wavenumber,
            parity=Parity.from_name(req.parity),
        )
        grid = make_grid(req.x_max, req.n_points)
        try:
            approx = tf_pair(params, profile, req.mu, grid)
        except TFDenominatorError as exc:
            raise HTTPException(
                status_code=422,
                detail={"kind": "tf-denominator-singular", "locations": list(exc.locations)},
            ) from None
        except ValueError as exc:
            raise HTTPException(status_code=422, detail={"kind": "invalid-input", "message": str(exc)})
        result = GroundStateResult(
            fields=approx.fields,
            mu=req.mu,
            energy=energy(approx.fields, params, profile),
            iterations=0,
            energy_trace=(),
            converged=True,
            final_residual=float("nan"),
            params=params,
            profile=profile,
        )
        sidecar = profile_sidecar(result, profile)
        sidecar["format"] = "bico-tf-ansatz"
        sidecar["result"]["mu_eff"] = approx.mu_eff
        sidecar["result"]["support_radius"] = approx.support_radius
        return ProfilePayload(
            profile_csv=render_profile_csv(approx.fields, profile), sidecar=sidecar
        )

    @app.post("/solve", response_model=SolveOut)
    def solve(req: SolveIn):
        params = SystemParams(g=req.g, omega=req.omega, total_norm=req.total_norm)
        profile = CouplingProfile(
            amplitude=req.amplitude,
            wavenumber=req.wavenumber,
            parity=Parity.from_name(req.parity),
        )
        grid = make_grid(req.x_max, req.n_points)
        config = SolverConfig(
            dtau=req.dtau,
            tau_max=req.tau_max,
            energy_tol=req.energy_tol,
            residual_tol=req.residual_tol,
            seed_kind=SeedKind.from_name(req.seed_kind),
        )
        try:
            result = solve_ground_state(params, profile, grid, config, rng_seed=req.rng_seed)
        except SolverError as exc:
            raise HTTPException(
                status_code=500, detail={"kind": "numerical-failure", "message": str(exc)}
            ) from None
        report = count_kinks(result.fields, KinkThresholdConfig(), profile)
        return SolveOut(
            profile_csv=render_profile_csv(result.fields, profile),
            sidecar=profile_sidecar(result, profile),
            summary=SolveSummary(
                energy=result.energy,
                mu=result.mu,
                iterations=result.iterations,
                converged=result.converged,
                final_residual=result.final_residual,
                kinks=KinkReportOut(
                    count=report.count,
                    positions=list(report.positions),
                    threshold_used=report.threshold_used,
                    parity_consistent=report.parity_consistent,
                ),
            ),
        )

    @app.post("/kinks", response_model=KinkReportOut)
    def kinks(req: KinksIn):
        try:
            fields, _ = parse_profile_csv(req.profile_csv)
        except ProfileFormatError as exc:
            raise HTTPException(
                status_code=422, detail={"kind": "parse-error", "message": str(exc)}
            ) from None
        if req.rel_threshold is not None:
            cfg = KinkThresholdConfig(relative_threshold=req.rel_threshold)
        elif req.abs_threshold is not None:
            cfg = KinkThresholdConfig(
                reference=ThresholdReference.ABSOLUTE, absolute_value=req.abs_threshold
            )
        else:
            cfg = KinkThresholdConfig()
        profile = None
        if req.sidecar and "coupling" in req.sidecar:
            c = req.sidecar["coupling"]
            profile = CouplingProfile(
                amplitude=c["amplitude"],
                wavenumber=c["wavenumber"],
                parity=Parity.from_name(c["parity"]),
            )
        report = count_kinks(fields, cfg, profile)
        return KinkReportOut(
            count=report.count,
            positions=list(report.positions),
            threshold_used=report.threshold_used,
            parity_consistent=report.parity_consistent,
        )

    @app.post("/sweeps", response_model=JobOut, status_code=202)
    def submit_sweep(req: SweepIn):
        try:
            spec = SweepSpec.from_dict(req.spec)
        except (ValueError, TypeError) as exc:
            raise HTTPException(
                status_code=422, detail={"kind": "invalid-spec", "message": str(exc)}
            ) from None
        job = jobs.submit(spec, req.workers, req.rng_seed)
        return _job_out(job)

    @app.get("/sweeps/{job_id}", response_model=JobOut)
    def poll_sweep(job_id: str):
        try:
            job = jobs.get(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown job id") from None
        return _job_out(job)

    @app.get("/sweeps/{job_id}/result", response_model=MapPayload)
    def sweep_result(job_id: str):
        try:
            job = jobs.get(job_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown job id") from None
        if job.status == "failed":
            raise HTTPException(
                status_code=500, detail={"kind": "numerical-failure", "message": job.error}
            )
        if job.status != "done":
            raise HTTPException(status_code=409, detail=f"job is {job.status}")
        return MapPayload(map_csv=render_map_csv(job.table), sidecar=map_sidecar(job.table))

    return app


app = create_app()
