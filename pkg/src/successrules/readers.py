"""Readers for schema, records and frequency files."""
from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import List, Optional, Tuple, Union

import yaml

from .ingest import (
    AttributeSchema,
    AttributeSpec,
    FrequencyTable,
    IngestError,
    _as_boolean,
    _as_outcome,
    dichotomize,
    frequency_table_from_counts,
)

PathLike = Union[str, Path]

DEFAULT_OUTCOME_COLUMN = "outcome"
SUCCESS_COLUMN = "successes"
FAILURE_COLUMN = "failures"

_SPEC_KEYS = {"name", "kind", "threshold", "polarity", "label_one", "label_zero", "symbol"}


class SchemaError(ValueError):
    pass


def parse_schema(data) -> Tuple[AttributeSchema, str]:
    """Build a schema from a loaded key/value tree.

    Returns the schema and the name of the records outcome column.
    """
    if isinstance(data, list):
        data = {"attributes": data}
    if not isinstance(data, dict) or "attributes" not in data:
        raise SchemaError("schema must be a mapping with an 'attributes' list")
    entries = data["attributes"]
    if not isinstance(entries, list):
        raise SchemaError("'attributes' must be a list")
    specs = []
    for i, entry in enumerate(entries):
        if isinstance(entry, str):
            entry = {"name": entry}
        if not isinstance(entry, dict):
            raise SchemaError(f"attribute #{i + 1}: expected a mapping")
        unknown = set(entry) - _SPEC_KEYS
        if unknown:
            raise SchemaError(f"attribute #{i + 1}: unknown keys {sorted(unknown)}")
        entry = dict(entry)
        entry["name"] = str(entry.get("name", ""))
        if entry.get("threshold") is not None:
            try:
                entry["threshold"] = float(entry["threshold"])
            except (TypeError, ValueError):
                raise SchemaError(f"attribute #{i + 1}: threshold must be numeric") from None
        try:
            specs.append(AttributeSpec(**entry))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None
    try:
        schema = AttributeSchema(tuple(specs))
    except ValueError as exc:
        raise SchemaError(str(exc)) from None
    return schema, str(data.get("outcome", DEFAULT_OUTCOME_COLUMN))


def load_schema(path: PathLike) -> Tuple[AttributeSchema, str]:
    try:
        with open(path, encoding="utf-8") as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise SchemaError(f"{path}: {exc}") from None
    return parse_schema(data)


def _read_rows(text: str, delimiter: Optional[str]) -> List[Tuple[int, List[str]]]:
    if delimiter is None:
        first = text.split("\n", 1)[0]
        try:
            delimiter = csv.Sniffer().sniff(first, delimiters=",;\t|").delimiter
        except csv.Error:
            delimiter = ","
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    rows = []
    for row in reader:
        if not row or all(not cell.strip() for cell in row):
            continue
        rows.append((reader.line_num, [cell.strip() for cell in row]))
    if not rows:
        raise IngestError("file is empty")
    return rows


def _column_index(header: List[str], name: str, line: int) -> int:
    try:
        return header.index(name)
    except ValueError:
        raise IngestError(f"missing column {name!r}", line) from None


def parse_records(text: str, schema: AttributeSchema, outcome_column: str = DEFAULT_OUTCOME_COLUMN,
                  delimiter: Optional[str] = None) -> List[Tuple[int, bool]]:
    """Parse a records file into ``(combination, outcome)`` observations."""
    rows = _read_rows(text, delimiter)
    header_line, header = rows[0]
    columns = {name: _column_index(header, name, header_line) for name in schema.names}
    outcome_at = _column_index(header, outcome_column, header_line)
    observations = []
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise IngestError(f"expected {len(header)} fields, got {len(row)}", line)
        record = {name: row[i] for name, i in columns.items()}
        try:
            combination = dichotomize(record, schema)
            outcome = _as_outcome(row[outcome_at])
        except IngestError as exc:
            raise IngestError(str(exc), line) from None
        observations.append((combination, outcome))
    return observations


def parse_frequency(text: str, schema: AttributeSchema,
                    delimiter: Optional[str] = None) -> FrequencyTable:
    """Parse a frequency file: one bit column per attribute, successes, optional failures.

    Combinations absent from the file get zero counts; duplicates are an error.
    """
    rows = _read_rows(text, delimiter)
    header_line, header = rows[0]
    bit_cols = [_column_index(header, name, header_line) for name in schema.names]
    succ_col = _column_index(header, SUCCESS_COLUMN, header_line)
    fail_col = header.index(FAILURE_COLUMN) if FAILURE_COLUMN in header else None
    successes = [0] * schema.size
    failures = [0] * schema.size
    seen = set()
    for line, row in rows[1:]:
        if len(row) != len(header):
            raise IngestError(f"expected {len(header)} fields, got {len(row)}", line)
        combination = 0
        for name, i in zip(schema.names, bit_cols):
            bit = _as_boolean(row[i])
            if bit is None:
                raise IngestError(f"column {name!r}: expected 0 or 1, got {row[i]!r}", line)
            combination = (combination << 1) | bit
        if combination in seen:
            raise IngestError(f"duplicate combination {schema.format_combination(combination)}", line)
        seen.add(combination)
        successes[combination] = _count(row[succ_col], SUCCESS_COLUMN, line)
        if fail_col is not None:
            failures[combination] = _count(row[fail_col], FAILURE_COLUMN, line)
    return frequency_table_from_counts(schema, successes, failures if fail_col is not None else None)


def _count(text: str, column: str, line: int) -> int:
    try:
        value = float(text)
    except ValueError:
        raise IngestError(f"column {column!r}: expected a count, got {text!r}", line) from None
    if value < 0 or value != int(value):
        raise IngestError(f"column {column!r}: expected a non-negative integer, got {text!r}", line)
    return int(value)


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror}") from None


def load_records(path: PathLike, schema: AttributeSchema, outcome_column: str = DEFAULT_OUTCOME_COLUMN,
                 delimiter: Optional[str] = None) -> List[Tuple[int, bool]]:
    return parse_records(_read_text(path), schema, outcome_column, delimiter)


def load_frequency(path: PathLike, schema: AttributeSchema,
                   delimiter: Optional[str] = None) -> FrequencyTable:
    return parse_frequency(_read_text(path), schema, delimiter)
