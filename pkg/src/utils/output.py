"""Result writers: CSV tables and JSON documents stamped with the run configuration."""

import csv
import io
import json
import logging
import sys
from collections.abc import Mapping, Sequence
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)

PROVENANCE_PREFIX = "# run_config: "


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    path_obj = Path(path)
    path_obj.parent.mkdir(parents=True, exist_ok=True)
    path_obj.write_text(text)
    logger.info(f"Wrote {path_obj}")


def _cell(value: Any) -> Any:
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return value


def render_csv(
    rows: Sequence[Mapping[str, Any]], columns: Sequence[str], provenance: str
) -> str:
    """CSV text with a leading ``# run_config:`` comment line and a header row."""
    buffer = io.StringIO()
    buffer.write(f"{PROVENANCE_PREFIX}{provenance}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(document: Mapping[str, Any], provenance: str) -> str:
    """JSON text of ``document`` with a ``run_config`` field added."""
    payload = {"run_config": json.loads(provenance), **document}
    return json.dumps(payload, indent=2) + "\n"


def write_csv(
    rows: Sequence[Mapping[str, Any]],
    columns: Sequence[str],
    provenance: str,
    path: str | None = None,
) -> None:
    _emit(render_csv(rows, columns, provenance), path)


def write_json(document: Mapping[str, Any], provenance: str, path: str | None = None) -> None:
    _emit(render_json(document, provenance), path)


def write_table(
    rows: Sequence[Mapping[str, Any]],
    columns: Sequence[str],
    provenance: str,
    path: str | None = None,
    fmt: str = "csv",
) -> None:
    """Write rows as CSV, or as a JSON document with a ``rows`` list."""
    if fmt == "json":
        write_json({"rows": [dict(row) for row in rows]}, provenance, path)
    else:
        write_csv(rows, columns, provenance, path)


def read_provenance(text: str) -> dict[str, Any]:
    """The run configuration stamped on CSV or JSON output."""
    first = text.splitlines()[0] if text else ""
    if first.startswith(PROVENANCE_PREFIX):
        parsed: dict[str, Any] = json.loads(first[len(PROVENANCE_PREFIX) :])
        return parsed
    document: dict[str, Any] = json.loads(text)["run_config"]
    return document
