"""Record emission in the three output formats."""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Mapping, Sequence, TextIO

import pandas as pd

from shifted_subsets.config import OUTPUT_FORMATS

Payload = Mapping[str, Any] | Sequence[Mapping[str, Any]]


def _rows(payload: Payload) -> list[Mapping[str, Any]]:
    if isinstance(payload, Mapping):
        nested = [v for v in payload.values() if isinstance(v, list)]
        if nested:
            return nested[0]
        return [payload]
    return list(payload)


def _plain_line(record: Mapping[str, Any]) -> str:
    if "value" in record:
        return str(record["value"])
    return " ".join(f"{key}={value}" for key, value in record.items())


def render(payload: Payload, fmt: str) -> str:
    """Text for a payload: a mapping or a list of flat records.

    JSON keeps the payload as is; csv and plain flatten a mapping to its
    first list-valued field (or to a single row).
    """
    if fmt not in OUTPUT_FORMATS:
        raise ValueError(f"unknown output format: {fmt}")
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    rows = _rows(payload)
    if fmt == "csv":
        return pd.DataFrame.from_records(rows).to_csv(index=False)
    return "".join(_plain_line(row) + "\n" for row in rows)


def emit_records(
    payload: Payload,
    fmt: str,
    path: str | None = None,
    stream: TextIO | None = None,
) -> None:
    text = render(payload, fmt)
    if path:
        Path(path).write_text(text, encoding="utf-8")
        return
    (stream or sys.stdout).write(text)
