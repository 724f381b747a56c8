# test_api.py
# Tests the FastAPI routes over schedules, bounds and the comparison table
import math

import pytest
from fastapi.testclient import TestClient

from hpzo import __version__
from hpzo.api import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


class TestStatus:
    def test_status(self, client):
        response = client.get("/hpzo/status")
        assert response.status_code == 200
        payload = response.json()
        assert payload["status"] == "ok"
        assert payload["version"] == __version__
        assert payload["regimes"] == ["strongly_convex", "convex", "nonconvex"]

    def test_problems(self, client):
        payload = client.get("/hpzo/problems").json()
        assert payload["count"] == 6
        assert "cosine" in payload["problems"]


class TestSchedule:
    def test_strongly_convex(self, client):
        response = client.post("/hpzo/schedule", json={
            "regime": "sc", "d": 10, "L": 1.0, "mu": 0.1, "Delta0": 1.0, "epsilon": 1e-3, "delta": 0.1,
        })
        assert response.status_code == 200
        assert response.json()["T"] == 12203

    def test_mu_above_L(self, client):
        response = client.post("/hpzo/schedule", json={
            "regime": "sc", "d": 3, "L": 1.0, "mu": 2.0, "Delta0": 1.0, "epsilon": 0.1, "delta": 0.1,
        })
        assert response.status_code == 400
        assert "mu" in response.json()["detail"]

    def test_missing_constants(self, client):
        response = client.post("/hpzo/schedule", json={"regime": "nc", "d": 3, "L": 1.0, "delta": 0.1})
        assert response.status_code == 400

    def test_unknown_regime(self, client):
        response = client.post("/hpzo/schedule", json={"regime": "concave", "d": 3, "L": 1.0, "delta": 0.1})
        assert response.status_code == 400

    def test_request_validation(self, client):
        response = client.post("/hpzo/schedule", json={"regime": "nc", "d": 0, "L": 1.0, "delta": 0.1})
        assert response.status_code == 422


class TestBounds:
    def test_nonconvex_example(self, client):
        response = client.post("/hpzo/bounds", json={
            "regime": "nc", "d": 2, "L": 1.0, "Delta0": 1.0, "epsilon": 1.0, "delta": 2.0 / math.e,
        })
        assert response.status_code == 200
        payload = response.json()
        assert payload["T"] == 160
        assert payload["bound_rounded"] == 1.0

    def test_short_convex_horizon(self, client):
        response = client.post("/hpzo/bounds", json={
            "regime": "cvx", "d": 2, "L": 1.0, "R": 1.0, "delta": 0.1, "T": 10, "alpha": 0.01,
        })
        assert response.status_code == 400


class TestCompare:
    def test_rows(self, client):
        response = client.post("/hpzo/compare", json={
            "d": 10, "L": 1.0, "mu": 0.1, "R": 1.0, "Delta0": 1.0, "epsilon": 0.01, "delta": 0.1,
        })
        assert response.status_code == 200
        payload = response.json()
        assert payload["count"] == 9
        assert all(row["queries_per_iteration"] == 2 for row in payload["rows"])
