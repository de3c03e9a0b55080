"""Result tables and their CSV / JSON serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path


class OutputError(OSError):
    exit_code = 4


@dataclass
class ResultTable:
    columns: list[str]
    rows: list[list] = field(default_factory=list)

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"row {i} has {len(row)} cells, expected {len(self.columns)}")

    def append(self, row) -> None:
        row = list(row)
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells, expected {len(self.columns)}")
        self.rows.append(row)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def format_value(v) -> str:
    if isinstance(v, str):
        return v
    return f"{float(v):.11e}"


def _json_value(v):
    if isinstance(v, str):
        return v
    x = float(f"{float(v):.11e}")
    return x if math.isfinite(x) else None


def render_csv(table: ResultTable) -> str:
    lines = [",".join(table.columns)]
    lines += [",".join(format_value(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def render_json(table: ResultTable) -> str:
    payload = {"columns": list(table.columns), "rows": [[_json_value(v) for v in row] for row in table.rows]}
    return json.dumps(payload, indent=1) + "\n"


def write_output(table: ResultTable, fmt: str, path) -> None:
    if fmt == "csv":
        text = render_csv(table)
    elif fmt == "json":
        text = render_json(table)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    try:
        with open(Path(path), "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {path}: {exc}") from exc
