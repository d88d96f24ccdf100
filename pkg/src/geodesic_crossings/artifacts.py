"""JSON and CSV result files.

Every artifact carries the run header: JSON documents under a "header" key, CSV files
as a leading "# tool version {config}" comment line.
"""

from __future__ import annotations

import csv
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

from pydantic import BaseModel

_LOGGER = logging.getLogger(__name__)


def _plain(payload: BaseModel | Mapping[str, Any] | Sequence[Any]) -> Any:
    if isinstance(payload, BaseModel):
        return payload.model_dump(mode="json", by_alias=True)
    if isinstance(payload, Mapping):
        return {k: _plain(v) if isinstance(v, BaseModel) else v for k, v in payload.items()}
    return [_plain(v) if isinstance(v, BaseModel) else v for v in payload]


def json_document(
    header: Mapping[str, Any], payload: BaseModel | Mapping[str, Any] | Sequence[Any]
) -> str:
    """{"header": ..., "result": ...} with sorted keys and a trailing newline."""
    doc = {"header": dict(header), "result": _plain(payload)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write_json(
    path: str | Path | None,
    header: Mapping[str, Any],
    payload: BaseModel | Mapping[str, Any] | Sequence[Any],
) -> None:
    """Write a JSON result document to ``path`` (stdout when None)."""
    text = json_document(header, payload)
    if path is None:
        sys.stdout.write(text)
        return
    Path(path).write_text(text, encoding="utf-8")
    _LOGGER.info("Wrote %s", path)


def write_csv(
    path: str | Path | None,
    header_line: str,
    rows: Sequence[Mapping[str, Any]],
    *,
    append: bool = False,
) -> None:
    """Write CSV rows under a header comment.

    With ``append`` and an existing non-empty file, rows are added without repeating the
    comment or the column row. Column order follows the first row.
    """
    if not rows:
        _LOGGER.warning("No rows to write")
        return
    columns = list(rows[0].keys())
    if path is None:
        sys.stdout.write(header_line + "\n")
        writer = csv.DictWriter(sys.stdout, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return
    target = Path(path)
    continuing = append and target.exists() and target.stat().st_size > 0
    with target.open("a" if continuing else "w", newline="", encoding="utf-8") as f:
        if not continuing:
            f.write(header_line + "\n")
        writer = csv.DictWriter(f, fieldnames=columns, lineterminator="\n")
        if not continuing:
            writer.writeheader()
        writer.writerows(rows)
    _LOGGER.info("Wrote %d rows to %s", len(rows), target)


def read_csv(path: str | Path) -> list[dict[str, str]]:
    """Rows of a CSV artifact, skipping "#" comment lines."""
    with Path(path).open(newline="", encoding="utf-8") as f:
        lines = [line for line in f if not line.startswith("#")]
    return list(csv.DictReader(lines))
