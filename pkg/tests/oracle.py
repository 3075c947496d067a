"""Independent reference implementations used to cross-check the engine.

Everything here is written the slow, obvious way on purpose: a nested-loop
group-by that rescans the table for every group, and bin truncation done
through datetime components. It shares no code with the engine under test.
"""

from __future__ import annotations

from datetime import datetime, timedelta, timezone

from quickdash.data import ColumnType, DataTable
from quickdash.model import Aggregation, DimensionGroup, MetricRef

_EPOCH = datetime(1970, 1, 1, tzinfo=timezone.utc)


def _bin(ms: int, unit: str) -> int:
    dt = _EPOCH + timedelta(milliseconds=ms)
    if unit == "year":
        start = datetime(dt.year, 1, 1, tzinfo=timezone.utc)
    elif unit == "month":
        start = datetime(dt.year, dt.month, 1, tzinfo=timezone.utc)
    elif unit == "week":
        day = datetime(dt.year, dt.month, dt.day, tzinfo=timezone.utc)
        start = day - timedelta(days=day.weekday())
    elif unit == "day":
        start = datetime(dt.year, dt.month, dt.day, tzinfo=timezone.utc)
    elif unit == "hour":
        start = datetime(dt.year, dt.month, dt.day, dt.hour, tzinfo=timezone.utc)
    else:
        raise ValueError(unit)
    return int((start - _EPOCH).total_seconds() * 1000)


def _row_key(table: DataTable, fields, r: int, time_unit):
    key = []
    for name in fields:
        value = table.columns[name][r]
        if value is None:
            return None
        if table.schema.column(name).type is ColumnType.TEMPORAL:
            value = _bin(value, time_unit)
        key.append(value)
    return tuple(key)


def _fold(agg: Aggregation, cells: list) -> float | int:
    present = [c for c in cells if c is not None]
    if agg is Aggregation.COUNT_STAR:
        return len(cells)
    if agg is Aggregation.COUNT:
        return len(present)
    if not present:
        return 0.0
    if agg is Aggregation.SUM:
        total = 0.0
        for c in present:
            total += c
        return total
    if agg is Aggregation.MEAN:
        total = 0.0
        for c in present:
            total += c
        return total / len(present)
    if agg is Aggregation.MIN:
        best = present[0]
        for c in present[1:]:
            if c < best:
                best = c
        return float(best)
    best = present[0]
    for c in present[1:]:
        if c > best:
            best = c
    return float(best)


def oracle_aggregate(
    table: DataTable,
    metrics: list[MetricRef],
    group: DimensionGroup | None = None,
    time_unit: str | None = None,
) -> tuple[list[tuple], list[tuple]]:
    """Nested-loop group-by. Returns (sorted keys, values per key)."""
    fields = group.fields if group is not None else ()
    keys = []
    for r in range(table.row_count):
        key = _row_key(table, fields, r, time_unit)
        if key is not None and key not in keys:
            keys.append(key)
    keys.sort()
    out = []
    for key in keys:
        values = []
        for metric in metrics:
            cells = []
            for r in range(table.row_count):
                if _row_key(table, fields, r, time_unit) != key:
                    continue
                if metric.aggregation is Aggregation.COUNT_STAR:
                    cells.append(True)
                else:
                    cells.append(table.columns[metric.field][r])
            values.append(_fold(metric.aggregation, cells))
        out.append(tuple(values))
    return keys, out
