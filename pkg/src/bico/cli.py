"""Thin command-line client for the compute service.

Every subcommand except ``serve`` talks HTTP to a running service (start
one with ``bico serve``); file outputs are written client-side from the
rendered payloads the service returns.  Exit codes: 0 success, 1 usage
error, 2 numerical or connection failure.
"""

from __future__ import annotations

import json
import logging
import os
import sys
import time
from pathlib import Path

import click
import httpx

DEFAULT_SERVER = "http://127.0.0.1:8000"
POLL_INTERVAL = 0.5

log = logging.getLogger(__name__)


class RemoteFailure(Exception):
    """Server-side numerical failure or unreachable server; exit code 2."""


def configure_logging():
    level_name = os.environ.get("BICO_LOG", "WARNING").upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")


def _request(server: str, method: str, path: str, payload=None, timeout=None):
    url = server.rstrip("/") + path
    try:
        resp = httpx.request(method, url, json=payload, timeout=timeout)
    except httpx.HTTPError as exc:
        raise RemoteFailure(
            f"cannot reach bico service at {server} ({exc}); start one with 'bico serve'"
        ) from None
    if resp.status_code == 422:
        raise click.UsageError(f"service rejected the request: {resp.text}")
    if resp.status_code >= 400:
        raise RemoteFailure(f"service error {resp.status_code}: {resp.text}")
    return resp.json()


def _write_profile_payload(payload: dict, out: str):
    out_path = Path(out)
    out_path.write_text(payload["profile_csv"])
    side = out_path.with_suffix(".json") if out_path.suffix else Path(str(out_path) + ".json")
    side.write_text(json.dumps(payload["sidecar"], indent=2) + "\n")
    return out_path, side


@click.group()
@click.option(
    "--server",
    default=lambda: os.environ.get("BICO_SERVER", DEFAULT_SERVER),
    show_default=DEFAULT_SERVER,
    help="Base URL of the bico service (env: BICO_SERVER).",
)
@click.pass_context
def cli(ctx, server):
    """Ground states of a binary condensate with sign-modulated linear coupling."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
@click.pass_context
def serve(ctx, host, port):
    """Run the compute service (blocks until interrupted)."""
    import uvicorn

    from .service import app

    level = os.environ.get("BICO_LOG", "info").lower()
    if level not in ("critical", "error", "warning", "info", "debug", "trace"):
        level = "info"
    uvicorn.run(app, host=host, port=port, log_level=level)


@cli.command()
@click.option("--g", "g", type=float, required=True, help="XPM coefficient.")
@click.option("--A", "amplitude", type=float, required=True, help="Coupling amplitude.")
@click.option("--alpha", type=float, required=True, help="Modulation wavenumber.")
@click.option("--parity", type=click.Choice(["odd", "even"]), required=True)
@click.option("--omega", type=float, default=0.05, show_default=True, help="Trap frequency.")
@click.option("--norm", type=float, default=2.41, show_default=True, help="Total norm.")
@click.option("--xmax", type=float, default=25.0, show_default=True)
@click.option("--points", type=int, default=1024, show_default=True)
@click.option("--dtau", type=float, default=1e-3, show_default=True)
@click.option("--tau-max", type=float, default=500.0, show_default=True)
@click.option(
    "--seed-kind", type=click.Choice(["tf", "random", "constant"]), default="tf", show_default=True
)
@click.option("--rng-seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.pass_context
def solve(ctx, g, amplitude, alpha, parity, omega, norm, xmax, points, dtau, tau_max,
          seed_kind, rng_seed, out):
    """Relax to the ground state and write the profile CSV + JSON sidecar."""
    payload = {
        "g": g,
        "amplitude": amplitude,
        "wavenumber": alpha,
        "parity": parity,
        "omega": omega,
        "total_norm": norm,
        "x_max": xmax,
        "n_points": points,
        "dtau": dtau,
        "tau_max": tau_max,
        "seed_kind": seed_kind,
        "rng_seed": rng_seed,
    }
    data = _request(ctx.obj["server"], "POST", "/solve", payload, timeout=None)
    out_path, side = _write_profile_payload(data, out)
    summary = data["summary"]
    click.echo(
        f"wrote {out_path} (+ {side.name}): converged={summary['converged']} "
        f"mu={summary['mu']:.6g} energy={summary['energy']:.6g} kinks={summary['kinks']['count']}"
    )
    if not summary["converged"]:
        log.warning("solve did not converge within tau_max")


@cli.command()
@click.option("--density", type=float, required=True, help="Total density of the uniform state.")
@click.option("--g", "g", type=float, required=True)
@click.option("--A", "amplitude", type=float, required=True)
@click.option("--oracle", is_flag=True, help="Also run the brute-force minimizer.")
@click.option("--resolution", type=click.IntRange(min=1000), default=1_000_000, show_default=True)
@click.pass_context
def uniform(ctx, density, g, amplitude, oracle, resolution):
    """Closed-form uniform states and the selected ground state, as JSON."""
    payload = {
        "density": density,
        "g": g,
        "amplitude": amplitude,
        "oracle": oracle,
        "resolution": resolution,
    }
    data = _request(ctx.obj["server"], "POST", "/uniform", payload, timeout=120.0)
    click.echo(json.dumps(data, indent=2))


@cli.command()
@click.option("--g", "g", type=float, required=True)
@click.option("--A", "amplitude", type=float, required=True)
@click.option("--alpha", type=float, required=True)
@click.option("--parity", type=click.Choice(["odd", "even"]), required=True)
@click.option("--mu", type=float, required=True, help="Bare chemical potential feeding the ansatz.")
@click.option("--omega", type=float, default=0.05, show_default=True)
@click.option("--xmax", type=float, default=25.0, show_default=True)
@click.option("--points", type=int, default=1024, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.pass_context
def tf(ctx, g, amplitude, alpha, parity, mu, omega, xmax, points, out):
    """Sample the perturbative ansatz and write it in the profile format."""
    payload = {
        "g": g,
        "amplitude": amplitude,
        "wavenumber": alpha,
        "parity": parity,
        "mu": mu,
        "omega": omega,
        "x_max": xmax,
        "n_points": points,
    }
    data = _request(ctx.obj["server"], "POST", "/tf", payload, timeout=120.0)
    out_path, side = _write_profile_payload(data, out)
    click.echo(f"wrote {out_path} (+ {side.name})")


@cli.command()
@click.option("--in", "in_path", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--rel-threshold", type=click.FloatRange(min=0, max=1, min_open=True, max_open=True),
              default=None, help="Threshold as a fraction of max |phi1| [default: 0.05].")
@click.option("--abs-threshold", type=click.FloatRange(min=0, min_open=True), default=None,
              help="Absolute amplitude threshold (alternative to --rel-threshold).")
@click.pass_context
def kinks(ctx, in_path, rel_threshold, abs_threshold):
    """Count kinks in a stored profile; prints the JSON report."""
    if rel_threshold is not None and abs_threshold is not None:
        raise click.UsageError("--rel-threshold and --abs-threshold are mutually exclusive")
    csv_path = Path(in_path)
    payload = {
        "profile_csv": csv_path.read_text(),
        "rel_threshold": rel_threshold,
        "abs_threshold": abs_threshold,
    }
    side = csv_path.with_suffix(".json") if csv_path.suffix else Path(str(csv_path) + ".json")
    if side.exists():
        payload["sidecar"] = json.loads(side.read_text())
    data = _request(ctx.obj["server"], "POST", "/kinks", payload, timeout=120.0)
    click.echo(json.dumps(data, indent=2))


@cli.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), required=True,
              help="JSON sweep specification.")
@click.option("--out", type=click.Path(dir_okay=False, writable=True), required=True)
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--rng-seed", type=click.IntRange(min=0), default=0, show_default=True)
@click.pass_context
def sweep(ctx, config_path, out, workers, rng_seed):
    """Run a kink-count parameter sweep and write the map CSV + sidecar."""
    try:
        spec = json.loads(Path(config_path).read_text())
    except json.JSONDecodeError as exc:
        raise click.UsageError(f"invalid JSON in {config_path}: {exc}")
    server = ctx.obj["server"]
    job = _request(server, "POST", "/sweeps", {"spec": spec, "workers": workers, "rng_seed": rng_seed},
                   timeout=60.0)
    job_id = job["job_id"]
    log.info("submitted sweep job %s (%d points)", job_id, job["total"])
    last = -1
    while True:
        job = _request(server, "GET", f"/sweeps/{job_id}", timeout=60.0)
        if job["status"] in ("done", "failed"):
            break
        if job["completed"] != last:
            last = job["completed"]
            log.info("sweep progress: %d/%d", job["completed"], job["total"])
        time.sleep(POLL_INTERVAL)
    if job["status"] == "failed":
        raise RemoteFailure(f"sweep failed: {job['error']}")
    data = _request(server, "GET", f"/sweeps/{job_id}/result", timeout=120.0)
    out_path = Path(out)
    out_path.write_text(data["map_csv"])
    side = out_path.with_suffix(".json") if out_path.suffix else Path(str(out_path) + ".json")
    side.write_text(json.dumps(data["sidecar"], indent=2) + "\n")
    n_rows = len(data["map_csv"].splitlines()) - 1
    click.echo(f"wrote {out_path} ({n_rows} points) (+ {side.name})")


def main(argv=None) -> int:
    """Entry point returning an exit code instead of raising SystemExit."""
    configure_logging()
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except RemoteFailure as exc:
        click.echo(f"error: {exc}", err=True)
        return 2
    return 0


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
