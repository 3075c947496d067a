"""In-memory tables: CSV loading, semantic type inference, grouped aggregation."""

from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

from .model import NUMERIC_AGGREGATIONS, Aggregation, DimensionGroup, MetricRef

logger = logging.getLogger(__name__)


class ColumnType(str, Enum):
    QUANTITATIVE = "quantitative"
    CATEGORICAL = "categorical"
    TEMPORAL = "temporal"


#: Fraction of non-null cells that must parse for a type to win inference.
TYPE_INFERENCE_THRESHOLD = 0.95

#: Units a temporal group key can be truncated to.
TIME_UNITS = ("year", "month", "week", "day", "hour")

#: Span cutoffs (ms) for picking a bin unit on a temporal axis.
HOUR_BIN_MAX_SPAN_MS = 72 * 3_600_000
DAY_BIN_MAX_SPAN_MS = 120 * 86_400_000
MONTH_BIN_MAX_SPAN_MS = 740 * 86_400_000

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)
_MS = timedelta(milliseconds=1)


class EngineError(Exception):
    """Base class for data-engine failures."""


class EmptyInput(EngineError):
    pass


class RaggedRows(EngineError):
    pass


class DuplicateHeader(EngineError):
    pass


class UnknownField(EngineError):
    pass


class MetricOnNonQuantitative(EngineError):
    pass


# ---------------------------------------------------------------------------
# Cell parsing


def _to_ms(dt: datetime) -> int:
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    else:
        dt = dt.astimezone(timezone.utc)
    return (dt - _EPOCH) // _MS


def _parse_iso_date(cell: str) -> int | None:
    if len(cell) != 10:
        return None
    try:
        return _to_ms(datetime.strptime(cell, "%Y-%m-%d"))
    except ValueError:
        return None


def _parse_iso_datetime(cell: str) -> int | None:
    if len(cell) < 16 or ("T" not in cell and " " not in cell):
        return None
    text = cell[:-1] + "+00:00" if cell.endswith("Z") else cell
    try:
        return _to_ms(datetime.fromisoformat(text))
    except ValueError:
        return None


def _parse_us_date(cell: str) -> int | None:
    if cell.count("/") != 2:
        return None
    try:
        return _to_ms(datetime.strptime(cell, "%m/%d/%Y"))
    except ValueError:
        return None


#: Accepted temporal patterns, tried in order. A column is temporal when a
#: single pattern covers at least TYPE_INFERENCE_THRESHOLD of its cells.
TEMPORAL_PATTERNS: tuple[tuple[str, Callable[[str], int | None]], ...] = (
    ("iso_date", _parse_iso_date),
    ("iso_datetime", _parse_iso_datetime),
    ("us_date", _parse_us_date),
)


def parse_temporal(cell: str) -> int | None:
    """Parse a cell to a UTC timestamp in milliseconds, or None."""
    for _name, pattern in TEMPORAL_PATTERNS:
        ms = pattern(cell)
        if ms is not None:
            return ms
    return None


def parse_number(cell: str) -> float | None:
    """Parse a cell to a finite float, or None."""
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if math.isfinite(value) else None


def infer_column_type(cells: Sequence[str | None], name: str = "") -> ColumnType:
    """Pick the semantic type for a raw column.

    Temporal wins when any single accepted pattern parses at least 95% of the
    non-null cells, then quantitative by the same rule over numbers; anything
    else is categorical. Fully-null columns default to categorical.
    """
    present = [c for c in cells if c is not None]
    if not present:
        logger.warning("column %r has no values; defaulting to categorical", name)
        return ColumnType.CATEGORICAL
    total = len(present)
    for _name, pattern in TEMPORAL_PATTERNS:
        hits = sum(1 for c in present if pattern(c) is not None)
        if hits / total >= TYPE_INFERENCE_THRESHOLD:
            return ColumnType.TEMPORAL
    hits = sum(1 for c in present if parse_number(c) is not None)
    if hits / total >= TYPE_INFERENCE_THRESHOLD:
        return ColumnType.QUANTITATIVE
    return ColumnType.CATEGORICAL


def _convert_cell(cell: str | None, ctype: ColumnType):
    if cell is None:
        return None
    if ctype is ColumnType.TEMPORAL:
        return parse_temporal(cell)
    if ctype is ColumnType.QUANTITATIVE:
        return parse_number(cell)
    return cell


# ---------------------------------------------------------------------------
# Schema and table


@dataclass(frozen=True)
class Column:
    name: str
    type: ColumnType
    cardinality: int
    null_count: int

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "type": self.type.value,
            "cardinality": self.cardinality,
            "nullCount": self.null_count,
        }


@dataclass(frozen=True)
class TableSchema:
    """Ordered column descriptors with inferred semantic types."""

    columns: tuple[Column, ...]

    def __post_init__(self) -> None:
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("column names must be unique")

    def column(self, name: str) -> Column | None:
        for col in self.columns:
            if col.name == name:
                return col
        return None

    def column_type(self, name: str) -> ColumnType:
        col = self.column(name)
        if col is None:
            raise UnknownField(f"unknown column {name!r}")
        return col.type

    def to_dict(self) -> dict:
        return {"columns": [c.to_dict() for c in self.columns]}


@dataclass(frozen=True)
class DataTable:
    """Columnar, immutable table. Temporal cells are UTC milliseconds."""

    schema: TableSchema
    columns: dict[str, tuple]
    row_count: int

    def __post_init__(self) -> None:
        for col in self.schema.columns:
            if len(self.columns[col.name]) != self.row_count:
                raise ValueError(f"column {col.name!r} has the wrong length")

    def to_dict(self) -> dict:
        return {"rowCount": self.row_count, **self.schema.to_dict()}


def table_from_raw(names: Sequence[str], raw_columns: Sequence[Sequence[str | None]]) -> DataTable:
    """Build a typed table from raw string columns (inference + conversion)."""
    if not raw_columns or not raw_columns[0]:
        raise EmptyInput("no data rows")
    row_count = len(raw_columns[0])
    columns: dict[str, tuple] = {}
    schema_cols = []
    for name, raw in zip(names, raw_columns):
        ctype = infer_column_type(raw, name)
        typed = tuple(_convert_cell(c, ctype) for c in raw)
        non_null = [v for v in typed if v is not None]
        schema_cols.append(
            Column(
                name=name,
                type=ctype,
                cardinality=len(set(non_null)),
                null_count=row_count - len(non_null),
            )
        )
        columns[name] = typed
    return DataTable(TableSchema(tuple(schema_cols)), columns, row_count)


def table_from_values(
    names: Sequence[str],
    types: Sequence[ColumnType],
    columns: Sequence[Sequence],
) -> DataTable:
    """Build a table directly from typed values (tests, synthetic data)."""
    if not columns or columns[0] is None:
        raise EmptyInput("no data rows")
    row_count = len(columns[0])
    schema_cols = []
    out: dict[str, tuple] = {}
    for name, ctype, values in zip(names, types, columns):
        typed = tuple(values)
        non_null = [v for v in typed if v is not None]
        schema_cols.append(Column(name, ctype, len(set(non_null)), row_count - len(non_null)))
        out[name] = typed
    return DataTable(TableSchema(tuple(schema_cols)), out, row_count)


def infer_schema(names: Sequence[str], raw_columns: Sequence[Sequence[str | None]]) -> TableSchema:
    """Infer the semantic schema of raw string columns."""
    return table_from_raw(names, raw_columns).schema


# ---------------------------------------------------------------------------
# CSV loading


def _read_text(source) -> str:
    if isinstance(source, Path):
        return source.read_bytes().decode("utf-8-sig")
    if isinstance(source, bytes):
        return source.decode("utf-8-sig")
    if isinstance(source, str):
        return source
    read = getattr(source, "read", None)
    if read is None:
        raise TypeError(f"cannot read CSV from {type(source).__name__}")
    payload = read()
    if isinstance(payload, bytes):
        return payload.decode("utf-8-sig")
    return payload


def load_csv(source, *, delimiter: str = ",", has_header: bool = True) -> DataTable:
    """Load a delimited text file into a typed table.

    Cells are stripped; empty cells and cells that do not parse under the
    inferred column type become nulls and count into null_count.
    """
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text), delimiter=delimiter)
    records: list[list[str]] = []
    arity: int | None = None
    header: list[str] | None = None
    for record in reader:
        if not record or (len(record) == 1 and record[0].strip() == "" and arity != 1):
            continue  # skip blank lines
        if header is None and has_header:
            header = [cell.strip() for cell in record]
            arity = len(header)
            continue
        if arity is None:
            arity = len(record)
        if len(record) != arity:
            raise RaggedRows(
                f"row at line {reader.line_num} has {len(record)} cells, expected {arity}"
            )
        records.append(record)
    if has_header and header is None:
        raise EmptyInput("input is empty")
    if has_header:
        assert header is not None
        dupes = {name for name in header if header.count(name) > 1}
        if dupes:
            raise DuplicateHeader(f"duplicate header column(s): {sorted(dupes)}")
        names = header
    else:
        names = [f"column_{i + 1}" for i in range(arity or 0)]
    if not records:
        raise EmptyInput("no data rows")
    raw_columns: list[list[str | None]] = [[] for _ in names]
    for record in records:
        for i, cell in enumerate(record):
            value = cell.strip()
            raw_columns[i].append(value if value else None)
    return table_from_raw(names, raw_columns)


# ---------------------------------------------------------------------------
# Timestamp bins


def truncate_timestamp(ms: int, unit: str) -> int:
    """Truncate a UTC millisecond timestamp down to the start of its bin."""
    dt = _EPOCH + timedelta(milliseconds=ms)
    if unit == "hour":
        dt = dt.replace(minute=0, second=0, microsecond=0)
    elif unit == "day":
        dt = dt.replace(hour=0, minute=0, second=0, microsecond=0)
    elif unit == "week":
        dt = dt.replace(hour=0, minute=0, second=0, microsecond=0)
        dt -= timedelta(days=dt.weekday())
    elif unit == "month":
        dt = dt.replace(day=1, hour=0, minute=0, second=0, microsecond=0)
    elif unit == "year":
        dt = dt.replace(month=1, day=1, hour=0, minute=0, second=0, microsecond=0)
    else:
        raise ValueError(f"unknown time unit {unit!r}")
    return (dt - _EPOCH) // _MS


def format_timestamp(ms: int) -> str:
    """UTC millisecond timestamp as an ISO-8601 string (second precision)."""
    dt = _EPOCH + timedelta(milliseconds=ms)
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def auto_time_unit(table: DataTable, field: str) -> str:
    """Pick the bin unit for a temporal column from its observed span."""
    values = [v for v in table.columns[field] if v is not None]
    if not values:
        return "day"
    span = max(values) - min(values)
    if span <= HOUR_BIN_MAX_SPAN_MS:
        return "hour"
    if span <= DAY_BIN_MAX_SPAN_MS:
        return "day"
    if span <= MONTH_BIN_MAX_SPAN_MS:
        return "month"
    return "year"


# ---------------------------------------------------------------------------
# Aggregation


@dataclass(frozen=True)
class AggregateRow:
    """One output group: key values plus one number per requested metric."""

    keys: tuple
    values: tuple


@dataclass(frozen=True)
class AggregateResult:
    """Grouped aggregation output, ordered ascending by group key."""

    key_fields: tuple[str, ...]
    metrics: tuple[MetricRef, ...]
    rows: tuple[AggregateRow, ...]
    time_unit: str | None = None
    dropped_rows: int = 0
    dropped_categories: int = 0

    def metric_values(self, index: int) -> list:
        return [row.values[index] for row in self.rows]


class _MetricAcc:
    __slots__ = ("total", "count", "vmin", "vmax", "rows")

    def __init__(self) -> None:
        self.total = 0.0
        self.count = 0
        self.vmin: float | None = None
        self.vmax: float | None = None
        self.rows = 0

    def add_row(self, value) -> None:
        self.rows += 1
        if value is None:
            return
        self.count += 1
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            return  # COUNT over a categorical column: only the tally applies
        self.total += value
        if self.vmin is None or value < self.vmin:
            self.vmin = value
        if self.vmax is None or value > self.vmax:
            self.vmax = value


def _finalize(metric: MetricRef, acc: _MetricAcc):
    agg = metric.aggregation
    if agg is Aggregation.COUNT_STAR:
        return acc.rows
    if agg is Aggregation.COUNT:
        return acc.count
    if acc.count == 0:
        return 0.0  # no non-null input; emit a finite placeholder
    if agg is Aggregation.SUM:
        return float(acc.total)
    if agg is Aggregation.MEAN:
        return float(acc.total) / acc.count
    if agg is Aggregation.MIN:
        return float(acc.vmin)
    return float(acc.vmax)


def aggregate(
    table: DataTable,
    metrics: Sequence[MetricRef],
    group: DimensionGroup | None = None,
    time_unit: str | None = None,
) -> AggregateResult:
    """Group rows by the dimension group and fold each metric per group.

    Temporal key values are truncated to time_unit, which is required exactly
    when the group contains a temporal field. Rows with a null value in any
    group field are dropped and counted in dropped_rows. Output rows are
    ordered ascending by key tuple, which makes results deterministic.
    """
    metric_list = tuple(metrics)
    if not metric_list:
        raise ValueError("at least one metric is required")
    schema = table.schema
    for metric in metric_list:
        if metric.aggregation is Aggregation.COUNT_STAR:
            continue
        col = schema.column(metric.field)
        if col is None:
            raise UnknownField(f"unknown metric column {metric.field!r}")
        if metric.aggregation in NUMERIC_AGGREGATIONS and col.type is not ColumnType.QUANTITATIVE:
            raise MetricOnNonQuantitative(
                f"{metric.aggregation.value} requires a quantitative column, "
                f"{metric.field!r} is {col.type.value}"
            )
    key_fields = group.fields if group is not None else ()
    temporal_flags = []
    for name in key_fields:
        col = schema.column(name)
        if col is None:
            raise UnknownField(f"unknown group column {name!r}")
        temporal_flags.append(col.type is ColumnType.TEMPORAL)
    has_temporal = any(temporal_flags)
    if has_temporal and time_unit is None:
        raise ValueError("time_unit is required when the group has a temporal field")
    if not has_temporal and time_unit is not None:
        raise ValueError("time_unit given but the group has no temporal field")
    if time_unit is not None and time_unit not in TIME_UNITS:
        raise ValueError(f"unknown time unit {time_unit!r}")

    key_columns = [table.columns[name] for name in key_fields]
    metric_columns = [
        table.columns[m.field] if m.field is not None else None for m in metric_list
    ]

    groups: dict[tuple, list[_MetricAcc]] = {}
    dropped = 0
    for r in range(table.row_count):
        key = []
        missing = False
        for c, column in enumerate(key_columns):
            value = column[r]
            if value is None:
                missing = True
                break
            if temporal_flags[c]:
                value = truncate_timestamp(value, time_unit)
            key.append(value)
        if missing:
            dropped += 1
            continue
        accs = groups.setdefault(tuple(key), [])
        if not accs:
            accs.extend(_MetricAcc() for _ in metric_list)
        for i, column in enumerate(metric_columns):
            accs[i].add_row(column[r] if column is not None else None)
    rows = tuple(
        AggregateRow(
            keys=key,
            values=tuple(_finalize(m, acc) for m, acc in zip(metric_list, groups[key])),
        )
        for key in sorted(groups)
    )
    return AggregateResult(
        key_fields=tuple(key_fields),
        metrics=metric_list,
        rows=rows,
        time_unit=time_unit,
        dropped_rows=dropped,
    )
