"""Core domain types for dashboard specifications."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Aggregation(str, Enum):
    """How a metric column is folded into one number per group."""

    SUM = "SUM"
    MEAN = "MEAN"
    MIN = "MIN"
    MAX = "MAX"
    COUNT = "COUNT"
    COUNT_STAR = "COUNT_STAR"

    @property
    def token(self) -> str:
        """External spelling used in spec documents."""
        return "COUNT(*)" if self is Aggregation.COUNT_STAR else self.value


#: Aggregations that only make sense over a quantitative column.
NUMERIC_AGGREGATIONS = frozenset(
    {Aggregation.SUM, Aggregation.MEAN, Aggregation.MIN, Aggregation.MAX}
)

#: External token -> aggregation; COUNT(*) is the row-count pseudo-aggregation.
AGGREGATION_TOKENS = {a.token: a for a in Aggregation}


@dataclass(frozen=True)
class MetricRef:
    """A column paired with its preferred aggregation.

    COUNT(*) counts rows and carries no column; every other aggregation
    names the column it folds.
    """

    field: str | None
    aggregation: Aggregation

    def __post_init__(self) -> None:
        if self.aggregation is Aggregation.COUNT_STAR:
            if self.field is not None:
                raise ValueError("COUNT(*) does not take a column")
        elif not self.field:
            raise ValueError(f"{self.aggregation.value} requires a column")

    @property
    def label(self) -> str:
        if self.aggregation is Aggregation.COUNT_STAR:
            return "COUNT(*)"
        return f"{self.field} ({self.aggregation.value})"


COUNT_STAR_METRIC = MetricRef(None, Aggregation.COUNT_STAR)


@dataclass(frozen=True)
class DimensionGroup:
    """One or two dimension columns drawn together on a single chart."""

    primary_field: str
    secondary_field: str | None = None

    def __post_init__(self) -> None:
        if not self.primary_field:
            raise ValueError("a dimension group needs a primary field")

    @property
    def fields(self) -> tuple[str, ...]:
        if self.secondary_field is None:
            return (self.primary_field,)
        return (self.primary_field, self.secondary_field)

    @property
    def label(self) -> str:
        return " / ".join(self.fields)


class MetricLayout(str, Enum):
    """Layer overlays all section metrics on each chart; Repeat gives each its own."""

    LAYER = "Layer"
    REPEAT = "Repeat"


@dataclass(frozen=True)
class Section:
    """A block of the dashboard: metrics crossed with dimension groups."""

    metrics: tuple[MetricRef, ...] = ()
    dimension_groups: tuple[DimensionGroup, ...] = ()
    metric_layout: MetricLayout = MetricLayout.REPEAT
    title: str | None = None


@dataclass(frozen=True)
class DashboardSpec:
    """The authored dashboard: an ordered series of sections."""

    sections: tuple[Section, ...]
    title: str | None = None

    def __post_init__(self) -> None:
        if not self.sections:
            raise ValueError("a dashboard needs at least one section")


# Validation issue codes. Stable vocabulary; also used in JSON payloads.
UNKNOWN_FIELD = "UnknownField"
AGGREGATION_TYPE_MISMATCH = "AggregationTypeMismatch"
DUPLICATE_FIELD_IN_GROUP = "DuplicateFieldInGroup"
INVALID_DIMENSION_TYPE = "InvalidDimensionType"
METRIC_DEFAULTED = "MetricDefaulted"


@dataclass(frozen=True)
class Issue:
    """One validation finding, anchored to a path in the input document."""

    code: str
    path: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class ValidationReport:
    """All problems found in one validation pass; empty errors means compilable."""

    errors: list[Issue] = field(default_factory=list)
    warnings: list[Issue] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def error(self, code: str, path: str, message: str) -> None:
        self.errors.append(Issue(code, path, message))

    def warning(self, code: str, path: str, message: str) -> None:
        self.warnings.append(Issue(code, path, message))

    def to_dict(self) -> dict[str, list[dict[str, str]]]:
        return {
            "errors": [i.to_dict() for i in self.errors],
            "warnings": [i.to_dict() for i in self.warnings],
        }
