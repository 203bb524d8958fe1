"""Pytest fixtures for testing."""

from collections.abc import Generator

import pytest
from fastapi.testclient import TestClient

from src.core.config import default_de_config, default_oracle_config, settings
from src.dequad.schemas import DEConfig
from src.main import app
from src.oracle.schemas import OracleConfig
from src.sintegrand.schemas import IntegralParams
from tests.utils.tables import MODERATE_CASES

settings.ENVIRONMENT = "testing"


@pytest.fixture(scope="session")
def phi1_config() -> DEConfig:
    """phi1 with A = 2, K = 6, eps0 = 1e-15."""
    return default_de_config("phi1", eps0=1e-15, K=6.0, max_attempts=4)


@pytest.fixture(scope="session")
def phi2_config() -> DEConfig:
    """phi2 with A = 5, eps0 = 1e-15."""
    return default_de_config("phi2", eps0=1e-15, max_attempts=4)


@pytest.fixture(scope="session")
def oracle_config() -> OracleConfig:
    return default_oracle_config()


@pytest.fixture(scope="session")
def row_two() -> IntegralParams:
    """Second moderate case, used for the truncation and error scans."""
    return MODERATE_CASES[1].params


@pytest.fixture(scope="session")
def row_four() -> IntegralParams:
    """Fourth moderate case, whose value is small against its integrand."""
    return MODERATE_CASES[3].params


@pytest.fixture(scope="session")
def row_nine() -> IntegralParams:
    return MODERATE_CASES[8].params


@pytest.fixture(scope="module")
def client() -> Generator[TestClient, None, None]:
    """Test client fixture."""
    with TestClient(app) as c:
        yield c
