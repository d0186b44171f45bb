import time

import numpy as np
import pytest
from fastapi.testclient import TestClient

from bico import __version__
from bico.fileio import parse_map_csv, parse_profile_csv
from bico.service import create_app


@pytest.fixture(scope="module")
def client():
    with TestClient(create_app()) as c:
        yield c


QUICK_SOLVE = {
    "g": 0.0,
    "amplitude": 0.1,
    "wavenumber": 0.4624,
    "parity": "odd",
    "n_points": 128,
    "dtau": 2e-2,
    "tau_max": 200.0,
    "energy_tol": 1e-9,
    "residual_tol": 1e-4,
}


class TestHealth:
    def test_health(self, client):
        resp = client.get("/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "version": __version__}


class TestUniformEndpoint:
    def test_selection_with_oracle(self, client):
        resp = client.post(
            "/uniform",
            json={"density": 1.0, "g": 2.0, "amplitude": 0.1, "oracle": True, "resolution": 10000},
        )
        assert resp.status_code == 200
        data = resp.json()
        assert data["ground_state"]["label"] == "asymmetric"
        assert data["ground_state"]["h_density"] == pytest.approx(0.4975, rel=1e-9)
        assert data["oracle"]["h_density"] == pytest.approx(0.4975, abs=1e-6)
        assert not data["tie"]

    def test_absent_asymmetric_reason(self, client):
        resp = client.post("/uniform", json={"density": 1.0, "g": 2.0, "amplitude": 1.5})
        data = resp.json()
        assert data["asymmetric"] is None
        assert data["asymmetric_absent_reason"] == "existence-condition"

    def test_tie_flag(self, client):
        resp = client.post("/uniform", json={"density": 1.0, "g": 1.0, "amplitude": 0.3})
        assert resp.json()["tie"] is True

    def test_validation(self, client):
        resp = client.post("/uniform", json={"density": -1.0, "g": 0.0, "amplitude": 0.1})
        assert resp.status_code == 422


class TestTFEndpoint:
    def test_ansatz_payload(self, client):
        mu = 0.17169 - 0.01**2 / (4 * 0.4624**2)
        resp = client.post(
            "/tf",
            json={
                "g": 2.0, "amplitude": 0.01, "wavenumber": 0.4624, "parity": "even",
                "mu": mu, "n_points": 129, "x_max": 25.0,
            },
        )
        assert resp.status_code == 200
        data = resp.json()
        fields, _ = parse_profile_csv(data["profile_csv"])
        center = fields.grid.n_points // 2
        assert fields.phi2[center] == pytest.approx(-7.4365e-3, abs=1e-6)
        assert data["sidecar"]["format"] == "bico-tf-ansatz"
        assert data["sidecar"]["result"]["mu_eff"] == pytest.approx(0.17169, rel=1e-9)

    def test_denominator_singularity_reported(self, client):
        resp = client.post(
            "/tf",
            json={
                "g": 0.0, "amplitude": 0.01, "wavenumber": 0.4624, "parity": "odd",
                "mu": 0.16, "n_points": 129,
            },
        )
        assert resp.status_code == 422
        detail = resp.json()["detail"]
        assert detail["kind"] == "tf-denominator-singular"
        assert len(detail["locations"]) >= 2


class TestSolveEndpoint:
    def test_solve_and_kinks_round_trip(self, client):
        resp = client.post("/solve", json=QUICK_SOLVE)
        assert resp.status_code == 200
        data = resp.json()
        summary = data["summary"]
        assert summary["converged"] is True
        assert summary["kinks"]["count"] % 2 == 1
        assert summary["kinks"]["parity_consistent"] is True
        fields, om = parse_profile_csv(data["profile_csv"])
        assert fields.grid.n_points == 128
        np.testing.assert_allclose(om, 0.1 * np.sin(0.4624 * fields.grid.nodes), atol=1e-15)

        kr = client.post("/kinks", json={"profile_csv": data["profile_csv"], "sidecar": data["sidecar"]})
        assert kr.status_code == 200
        assert kr.json() == summary["kinks"]

    def test_invalid_points_rejected(self, client):
        resp = client.post("/solve", json={**QUICK_SOLVE, "n_points": 8})
        assert resp.status_code == 422

    def test_unstable_dtau_is_numerical_failure(self, client):
        resp = client.post("/solve", json={**QUICK_SOLVE, "dtau": 10.0})
        assert resp.status_code == 500
        assert resp.json()["detail"]["kind"] == "numerical-failure"


class TestKinksEndpoint:
    def test_parse_error_carries_line(self, client):
        resp = client.post("/kinks", json={"profile_csv": "x,phi1,phi2,omega\n1,2\n"})
        assert resp.status_code == 422
        assert "line 2" in resp.json()["detail"]["message"]

    def test_exclusive_thresholds(self, client):
        resp = client.post(
            "/kinks",
            json={"profile_csv": "x,phi1,phi2,omega\n", "rel_threshold": 0.05, "abs_threshold": 0.02},
        )
        assert resp.status_code == 422


class TestSweepJobs:
    def test_lifecycle(self, client):
        spec = {
            "g": 0.0,
            "parity": "odd",
            "amplitudes": [0.05],
            "wavenumbers": [2.0, 4.0],
            "grid": {"x_max": 25.0, "n_points": 128},
            "solver": {"dtau": 2e-2, "tau_max": 200.0, "energy_tol": 1e-9, "residual_tol": 1e-4},
        }
        resp = client.post("/sweeps", json={"spec": spec, "workers": 1, "rng_seed": 5})
        assert resp.status_code == 202
        job = resp.json()
        assert job["total"] == 2
        deadline = time.time() + 120
        while time.time() < deadline:
            job = client.get(f"/sweeps/{job['job_id']}").json()
            if job["status"] in ("done", "failed"):
                break
            time.sleep(0.2)
        assert job["status"] == "done"
        assert job["completed"] == 2
        result = client.get(f"/sweeps/{job['job_id']}/result")
        assert result.status_code == 200
        rows = parse_map_csv(result.json()["map_csv"])
        assert len(rows) == 2
        assert all(r["converged"] for r in rows)
        assert result.json()["sidecar"]["spec"]["g"] == 0.0

    def test_unknown_job(self, client):
        assert client.get("/sweeps/nope").status_code == 404
        assert client.get("/sweeps/nope/result").status_code == 404

    def test_result_before_done_conflicts(self, client):
        spec = {
            "g": 0.0,
            "amplitudes": [0.05],
            "wavenumbers": [2.0],
            "grid": {"x_max": 25.0, "n_points": 128},
            "solver": {"dtau": 2e-2, "tau_max": 200.0, "energy_tol": 1e-9, "residual_tol": 1e-4},
        }
        job = client.post("/sweeps", json={"spec": spec}).json()
        resp = client.get(f"/sweeps/{job['job_id']}/result")
        assert resp.status_code in (200, 409)  # may already be done on a fast box

    def test_invalid_spec_rejected(self, client):
        resp = client.post("/sweeps", json={"spec": {"g": 0.0, "bogus": 1}})
        assert resp.status_code == 422
