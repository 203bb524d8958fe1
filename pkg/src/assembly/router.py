from typing import Any

from fastapi import APIRouter

from src.assembly import service
from src.assembly.schemas import SQuadConfig, ThreeCentreRequest, ThreeCentreResult
from src.core.config import default_de_config, default_squad_config, settings

router = APIRouter(prefix="/three-centre", tags=["three-centre"])


@router.post("/", response_model=ThreeCentreResult)
def compute_three_centre(*, request: ThreeCentreRequest) -> Any:
    """
    Compute a three-centre nuclear attraction integral.

    `accuracy_warning` is set when the s-integral at twice the order moved the
    value by more than the configured tolerance.
    """
    defaults = default_squad_config()
    sq = SQuadConfig(
        order=defaults.order if request.order is None else request.order,
        refine=defaults.refine if request.refine is None else request.refine,
        tolerance=defaults.tolerance,
    )
    return service.three_centre(
        request.params, sq, default_de_config(request.transform), workers=settings.WORKERS
    )
