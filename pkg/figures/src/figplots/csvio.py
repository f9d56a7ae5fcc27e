"""Reader for the simulator's CSV output format.

Files carry `# key=value` metadata lines, then a `t,<obs>,...` header,
then comma-separated decimal rows.
"""

from __future__ import annotations

import os
from dataclasses import dataclass


class CsvFormatError(Exception):
    """Missing or malformed input CSV; the message names the file."""


@dataclass
class TimeSeries:
    path: str
    metadata: dict[str, str]
    columns: list[str]
    data: dict[str, list[float]]

    @property
    def n_rows(self) -> int:
        return len(self.data[self.columns[0]])


def read_timeseries(path: str) -> TimeSeries:
    if not os.path.exists(path):
        raise CsvFormatError(f"{path}: file not found")
    metadata: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    with open(path) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                key, sep, value = line.lstrip("# ").partition("=")
                if sep:
                    metadata[key] = value
                continue
            if columns is None:
                columns = line.split(",")
                if columns[0] != "t" or len(columns) < 2:
                    raise CsvFormatError(f"{path}:{lineno}: bad header {line!r}")
                continue
            try:
                values = [float(x) for x in line.split(",")]
            except ValueError as exc:
                raise CsvFormatError(f"{path}:{lineno}: {exc}") from exc
            if len(values) != len(columns):
                raise CsvFormatError(
                    f"{path}:{lineno}: expected {len(columns)} fields, got {len(values)}")
            rows.append(values)
    if columns is None:
        raise CsvFormatError(f"{path}: no header line found")
    if not rows:
        raise CsvFormatError(f"{path}: no data rows")
    data = {name: [row[i] for row in rows] for i, name in enumerate(columns)}
    return TimeSeries(path=path, metadata=metadata, columns=columns, data=data)
