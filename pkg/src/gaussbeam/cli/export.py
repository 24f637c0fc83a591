"""Result documents and their JSON, CSV and text renderings"""
import csv
import dataclasses
import io
import json
import math
from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np

from ..numerics.dyadic import DyadicGaussian
from ..utils import get_version
from ..utils.errors import InternalError, UserErrorMessage

SCHEMA_VERSION = "1"
SIGNIFICANT_DIGITS = 12

#: Top level keys of every document and their JSON types
DOCUMENT_SCHEMA: dict[str, type] = {
    "schema_version": str,
    "command": str,
    "parameters": dict,
    "payload": dict,
    "provenance": dict,
}
PROVENANCE_SCHEMA: dict[str, type | tuple[type, ...]] = {
    "tool_version": str,
    "seed": (int, type(None)),
}


def format_float(value: float) -> float | str:
    """12 significant digits; non-finite values become strings so the JSON stays standard"""
    value = float(value)
    if not math.isfinite(value):
        return str(value)
    rounded = float(f"{value:.{SIGNIFICANT_DIGITS}g}")
    # No negative zero in output
    return rounded + 0.0


def format_complex(value: complex) -> str:
    """Python literal style with 12 significant digits, e.g. (0.707106781187-0.707106781187j)"""
    re = format_float(value.real)
    im = format_float(value.imag)
    if im == 0:
        return _short(re)
    if re == 0:
        return f"{_short(im)}j"
    sign = "-" if im < 0 else "+"
    return f"({_short(re)}{sign}{_short(abs(im))}j)"


def _short(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(value)


def normalize(value: Any) -> Any:
    """Convert a payload to plain JSON types with the float and exact conventions applied"""
    if isinstance(value, DyadicGaussian):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return format_complex(complex(value))
    if isinstance(value, dict):
        return {str(k): normalize(v) for k, v in value.items()}
    if isinstance(value, np.ndarray):
        return [normalize(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [normalize(v) for v in value]
    if dataclasses.is_dataclass(value):
        return normalize(dataclasses.asdict(value))
    raise InternalError(f"Cannot serialize {type(value).__name__}")


@dataclasses.dataclass(frozen=True)
class ResultDocument:
    command: str
    parameters: dict
    payload: dict
    provenance: dict
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def create(cls, command: str, parameters: dict, payload: dict, seed: int | None):
        return cls(
            command=command,
            parameters=normalize(parameters),
            payload=normalize(payload),
            provenance={"tool_version": get_version(), "seed": seed},
        )

    def as_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": self.parameters,
            "payload": self.payload,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise UserErrorMessage(f"Not a JSON document: {e}") from e
        validate_document(data)
        return cls(**data)


def validate_document(data: Any) -> None:
    """Check a decoded document against the published schema"""
    if not isinstance(data, dict):
        raise UserErrorMessage("Document must be a JSON object")
    if missing := set(DOCUMENT_SCHEMA).difference(data):
        raise UserErrorMessage(f"Document lacks key(s): {', '.join(sorted(missing))}")
    if extra := set(data).difference(DOCUMENT_SCHEMA):
        raise UserErrorMessage(f"Unknown document key(s): {', '.join(sorted(extra))}")
    for key, expected in DOCUMENT_SCHEMA.items():
        if not isinstance(data[key], expected):
            raise UserErrorMessage(f"Document key {key!r} must be {expected.__name__}")
    if data["schema_version"] != SCHEMA_VERSION:
        raise UserErrorMessage(f"Unsupported schema version {data['schema_version']!r}")
    for key, expected in PROVENANCE_SCHEMA.items():
        if key not in data["provenance"] or not isinstance(data["provenance"][key], expected):
            raise UserErrorMessage(f"Provenance key {key!r} missing or mistyped")


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """UTF-8 CSV with LF line endings and a mandatory header row"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(normalize(list(row)))
    return buffer.getvalue()


def render_table(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    """Whitespace aligned text table"""
    text_rows = [list(header)] + [[str(normalize(v)) for v in row] for row in rows]
    widths = [max(len(r[c]) for r in text_rows) for c in range(len(header))]
    return "".join(
        "  ".join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip() + "\n"
        for row in text_rows
    )
