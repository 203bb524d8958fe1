# Command-line exceptions

from pathlib import Path

from src.core.exceptions import IntegralError


class ParamsFileError(IntegralError):
    """Raised when a params file cannot be read or a field cannot be parsed."""

    def __init__(
        self, path: Path | str, message: str, line: int | None = None, field: str | None = None
    ) -> None:
        where = str(path) if line is None else f"{path}:{line}"
        if field is not None:
            where = f"{where} [{field}]"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line
        self.field = field
