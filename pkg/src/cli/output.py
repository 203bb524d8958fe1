import csv
import json
from collections.abc import Sequence
from typing import Any, TextIO

from src.cli.schemas import OutputFormat

Row = dict[str, Any]


def format_value(value: Any) -> str:
    """17 significant digits for floats, independent of the locale."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    if value is None:
        return ""
    return str(value)


def write_rows(rows: Sequence[Row], fmt: OutputFormat, stream: TextIO) -> None:
    if fmt == "json":
        json.dump(list(rows), stream, indent=2, allow_nan=True)
        stream.write("\n")
        return
    if not rows:
        return
    columns = list(dict.fromkeys(c for row in rows for c in row))
    if fmt == "csv":
        writer = csv.writer(stream, delimiter=",", lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(row.get(c)) for c in columns])
        return
    widths = {c: max(len(c), *(len(format_value(r.get(c))) for r in rows)) for c in columns}
    stream.write("  ".join(c.rjust(widths[c]) for c in columns) + "\n")
    for row in rows:
        stream.write("  ".join(format_value(row.get(c)).rjust(widths[c]) for c in columns) + "\n")
