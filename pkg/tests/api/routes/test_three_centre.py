"""Tests for the three-centre endpoint."""

from fastapi.testclient import TestClient

from src.core.config import settings

S_ORBITALS = {
    "n1": 1,
    "l1": 0,
    "m1": 0,
    "zeta1": 1.0,
    "n2": 1,
    "l2": 0,
    "m2": 0,
    "zeta2": 1.5,
    "R1": [0.8, 0.0, 0.6],
    "R2": [0.0, 0.0, 2.0],
}


class TestThreeCentre:
    """Three-centre nuclear attraction integrals."""

    def test_s_orbitals(self, client: TestClient):
        response = client.post(
            f"{settings.API_V1_STR}/three-centre/",
            json={"params": S_ORBITALS, "order": 16, "refine": False},
        )
        assert response.status_code == 200
        content = response.json()
        assert content["imag"] == 0.0
        assert content["real"] != 0.0
        assert content["n_terms"] == 1
        assert content["order"] == 16

    def test_invalid_projection(self, client: TestClient):
        response = client.post(
            f"{settings.API_V1_STR}/three-centre/",
            json={"params": S_ORBITALS | {"m1": 1}},
        )
        assert response.status_code == 422

    def test_order_bounds(self, client: TestClient):
        response = client.post(
            f"{settings.API_V1_STR}/three-centre/",
            json={"params": S_ORBITALS, "order": 4},
        )
        assert response.status_code == 422
