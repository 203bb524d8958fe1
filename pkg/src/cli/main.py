import argparse
import sys
from collections.abc import Sequence
from pathlib import Path

from pydantic import ValidationError

from src.cli.commands import COMMANDS, EXIT_INPUT, run
from src.cli.schemas import RunSpec
from src.core.config import settings
from src.core.logging_config import setup_logging


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="de-integrals",
        description=(
            "Semi-infinite spherical Bessel integrals and three-centre nuclear "
            "attraction integrals by double exponential quadrature."
        ),
    )
    parser.add_argument("--command", required=True, choices=sorted(COMMANDS))
    parser.add_argument("--params", required=True, type=Path, help="params file")
    parser.add_argument("--transform", choices=["phi1", "phi2", "both"], default="both")
    parser.add_argument("--eps0", type=float, default=settings.DE_EPS0)
    parser.add_argument("--K", type=float, default=settings.DE_K)
    parser.add_argument("--max-attempts", type=int, default=settings.DE_MAX_ATTEMPTS)
    parser.add_argument("--output", choices=["csv", "json", "text"], default="csv")
    parser.add_argument("--out", type=Path, default=None, help="write here instead of stdout")
    parser.add_argument(
        "--tolerance",
        type=float,
        default=1e-12,
        help="relative tolerance against the reference integrator",
    )
    parser.add_argument("--m-min", type=float, default=None)
    parser.add_argument("--m-max", type=float, default=None)
    parser.add_argument("--m-num", type=int, default=28)
    parser.add_argument("--start-upper", type=int, default=7)
    parser.add_argument("--t-min", type=float, default=-4.0)
    parser.add_argument("--t-max", type=float, default=4.0)
    parser.add_argument("--t-num", type=int, default=161)
    parser.add_argument("--order", type=int, default=settings.SQUAD_ORDER)
    parser.add_argument(
        "--no-refine",
        dest="refine",
        action="store_false",
        default=settings.SQUAD_REFINE,
        help="skip the doubled-order check of the s-integral",
    )
    parser.add_argument("--workers", type=int, default=settings.WORKERS)
    parser.add_argument("--log-level", default=settings.LOG_LEVEL)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logger = setup_logging(log_level=args.log_level)
    try:
        spec = RunSpec(
            command=args.command,
            params_file=args.params,
            transform=args.transform,
            eps0=args.eps0,
            K=args.K,
            max_attempts=args.max_attempts,
            output=args.output,
            out=args.out,
            tolerance=args.tolerance,
            m_min=args.m_min,
            m_max=args.m_max,
            m_num=args.m_num,
            start_upper=args.start_upper,
            t_min=args.t_min,
            t_max=args.t_max,
            t_num=args.t_num,
            order=args.order,
            refine=args.refine,
            workers=args.workers,
        )
    except ValidationError as e:
        logger.error("invalid arguments: %s", e)
        return EXIT_INPUT

    if spec.out is None:
        return run(spec, sys.stdout)
    with spec.out.open("w", encoding="utf-8", newline="") as stream:
        return run(spec, stream)


if __name__ == "__main__":
    sys.exit(main())
