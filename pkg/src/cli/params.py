"""
Params files: one case per line, whitespace-separated, '#' starts a comment.

I(s) rows use the table column order  s nu n_gamma n_x lam R1 zeta1 R2 zeta2
with nu written as a fraction such as 9/2. Three-centre rows are
n1 l1 m1 zeta1 n2 l2 m2 zeta2 R1x R1y R1z R2x R2y R2z.
"""

from collections.abc import Callable, Iterator
from fractions import Fraction
from pathlib import Path
from typing import Any

from pydantic import ValidationError

from src.assembly.schemas import ThreeCentreParams
from src.cli.exceptions import ParamsFileError
from src.sintegrand.schemas import IntegralParams

INTEGRAL_FIELDS: tuple[tuple[str, Callable[[str], Any]], ...] = (
    ("s", float),
    ("nu", lambda text: str(Fraction(text))),
    ("n_gamma", int),
    ("n_x", int),
    ("lam", int),
    ("R1", float),
    ("zeta1", float),
    ("R2", float),
    ("zeta2", float),
)

THREE_CENTRE_FIELDS: tuple[tuple[str, Callable[[str], Any]], ...] = (
    ("n1", int),
    ("l1", int),
    ("m1", int),
    ("zeta1", float),
    ("n2", int),
    ("l2", int),
    ("m2", int),
    ("zeta2", float),
    ("R1x", float),
    ("R1y", float),
    ("R1z", float),
    ("R2x", float),
    ("R2y", float),
    ("R2z", float),
)


def _rows(text: str) -> Iterator[tuple[int, list[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield number, tokens


def _convert(
    source: Path | str,
    number: int,
    tokens: list[str],
    fields: tuple[tuple[str, Callable[[str], Any]], ...],
) -> dict[str, Any]:
    if len(tokens) != len(fields):
        raise ParamsFileError(
            source, f"expected {len(fields)} values, found {len(tokens)}", line=number
        )
    values: dict[str, Any] = {}
    for (name, convert), token in zip(fields, tokens, strict=True):
        try:
            values[name] = convert(token)
        except (ValueError, ZeroDivisionError) as e:
            raise ParamsFileError(
                source, f"cannot parse {token!r}: {e}", line=number, field=name
            ) from e
    return values


def _validation_message(source: Path | str, number: int, e: ValidationError) -> ParamsFileError:
    error = e.errors()[0]
    field = ".".join(str(part) for part in error["loc"]) or None
    message = str(error["msg"]).removeprefix("Value error, ")
    return ParamsFileError(source, message, line=number, field=field)


def parse_integral_params(text: str, source: Path | str = "<params>") -> list[IntegralParams]:
    rows: list[IntegralParams] = []
    for number, tokens in _rows(text):
        values = _convert(source, number, tokens, INTEGRAL_FIELDS)
        try:
            rows.append(IntegralParams(**values))
        except ValidationError as e:
            raise _validation_message(source, number, e) from e
    if not rows:
        raise ParamsFileError(source, "no parameter rows")
    return rows


def parse_three_centre_params(
    text: str, source: Path | str = "<params>"
) -> list[ThreeCentreParams]:
    rows: list[ThreeCentreParams] = []
    for number, tokens in _rows(text):
        v = _convert(source, number, tokens, THREE_CENTRE_FIELDS)
        try:
            rows.append(
                ThreeCentreParams(
                    n1=v["n1"],
                    l1=v["l1"],
                    m1=v["m1"],
                    zeta1=v["zeta1"],
                    n2=v["n2"],
                    l2=v["l2"],
                    m2=v["m2"],
                    zeta2=v["zeta2"],
                    R1=(v["R1x"], v["R1y"], v["R1z"]),
                    R2=(v["R2x"], v["R2y"], v["R2z"]),
                )
            )
        except ValidationError as e:
            raise _validation_message(source, number, e) from e
    if not rows:
        raise ParamsFileError(source, "no parameter rows")
    return rows


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParamsFileError(path, f"cannot read file: {e.strerror}") from e


def read_integral_params(path: Path) -> list[IntegralParams]:
    return parse_integral_params(_read(path), path)


def read_three_centre_params(path: Path) -> list[ThreeCentreParams]:
    return parse_three_centre_params(_read(path), path)
