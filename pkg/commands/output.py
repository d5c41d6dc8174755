"""
Report rendering for every subcommand: JSON (sorted keys), an aligned text table, or CSV with
the JSON fields flattened. Reports go to standard output only.
"""

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, TextIO

FORMATS = ("json", "table", "csv")


@dataclass
class CommandResult:
    """What a subcommand produced: the JSON document, its table rows and the exit status."""

    payload: Any
    rows: List[Dict[str, Any]] = field(default_factory=list)
    status: int = 0
    text: Optional[str] = None


def flatten(record: Any, prefix: str = "") -> Dict[str, Any]:
    """Nested dicts become dotted keys; lists of scalars are joined with ';'."""
    if isinstance(record, dict):
        out: Dict[str, Any] = {}
        for key, value in record.items():
            out.update(flatten(value, f"{prefix}.{key}" if prefix else str(key)))
        return out
    if isinstance(record, (list, tuple)):
        if all(not isinstance(item, (dict, list, tuple)) for item in record):
            return {prefix: ";".join(_scalar(item) for item in record)}
        out = {}
        for index, item in enumerate(record):
            out.update(flatten(item, f"{prefix}.{index}"))
        return out
    return {prefix: record}


def _scalar(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def _columns(rows: List[Dict[str, Any]]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def render_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_table(rows: List[Dict[str, Any]]) -> str:
    if not rows:
        return "(no rows)\n"
    flat = [flatten(row) for row in rows]
    columns = _columns(flat)
    cells = [[_scalar(row.get(column)) for column in columns] for row in flat]
    widths = [max(len(column), *(len(line[i]) for line in cells)) for i, column in enumerate(columns)]
    lines = [
        "  ".join(column.ljust(width) for column, width in zip(columns, widths)).rstrip(),
        "  ".join("-" * width for width in widths),
    ]
    lines.extend("  ".join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip() for line in cells)
    return "\n".join(lines) + "\n"


def render_csv(rows: List[Dict[str, Any]]) -> str:
    flat = [flatten(row) for row in rows]
    columns = _columns(flat)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in flat:
        writer.writerow([_scalar(row.get(column)) for column in columns])
    return buffer.getvalue()


def render(result: CommandResult, fmt: str = "json") -> str:
    if result.text is not None:
        return result.text
    if fmt == "json":
        return render_json(result.payload)
    if fmt == "table":
        return render_table(result.rows)
    if fmt == "csv":
        return render_csv(result.rows)
    raise ValueError(f"Unknown output format {fmt!r}; use one of {', '.join(FORMATS)}")


def emit(result: CommandResult, fmt: str = "json", stream: Optional[TextIO] = None) -> None:
    stream = stream or sys.stdout
    stream.write(render(result, fmt))
    stream.flush()
