from typing import Any

from fastapi import APIRouter

from src.core.config import default_de_config, default_oracle_config
from src.dequad import service
from src.dequad.schemas import IntegralRequest, OracleValue, QuadratureResult
from src.oracle.service import oracle_I_s
from src.sintegrand.schemas import IntegralParams

router = APIRouter(prefix="/integrals", tags=["integrals"])


@router.post("/", response_model=QuadratureResult)
def compute_integral(*, request: IntegralRequest) -> Any:
    """
    Compute I(s) with the double exponential rule.

    Omitted `eps0`, `K` and `max_attempts` take the server's configured defaults.
    A result whose `est_rel_error` exceeds `eps0` while `rel_change` is above
    `roundoff` did not converge within the M schedule.
    """
    cfg = default_de_config(
        request.transform,
        eps0=request.eps0,
        K=request.K,
        max_attempts=request.max_attempts,
    )
    return service.integrate_I_s(request.params, cfg)


@router.post("/oracle", response_model=OracleValue)
def compute_reference(*, params: IntegralParams) -> Any:
    """Reference value of I(s) from adaptive Gauss-Kronrod panels."""
    return OracleValue(value=oracle_I_s(params, default_oracle_config()))
