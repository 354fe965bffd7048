"""Strict ingestion of the 17-column student activity CSV.

The expected file is an LMS activity export: one row per student, a fixed
header (including its historical capitalization quirks, e.g. ``NationalITy``
and ``VisITedResources``), four integer activity counts in [0, 100], and a
three-way grade band label ``L``/``M``/``H`` in the final ``Class`` column.

Parsing enforces structure (header, field count, integer counts) and fails
fast; :func:`validate` reports data-level violations without raising, so a
caller can list every problem in a file at once.
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass, fields

from .errors import DatasetFormatError

CANONICAL_HEADER = (
    "gender",
    "NationalITy",
    "PlaceofBirth",
    "StageID",
    "GradeID",
    "SectionID",
    "Topic",
    "Semester",
    "Relation",
    "raisedhands",
    "VisITedResources",
    "AnnouncementsView",
    "Discussion",
    "ParentAnsweringSurvey",
    "ParentschoolSatisfaction",
    "StudentAbsenceDays",
    "Class",
)

COUNT_COLUMNS = (
    "raisedhands",
    "VisITedResources",
    "AnnouncementsView",
    "Discussion",
)

CATEGORICAL_COLUMNS = tuple(
    name for name in CANONICAL_HEADER if name not in COUNT_COLUMNS
)

CLASS_LABELS = ("L", "M", "H")

COUNT_MIN = 0
COUNT_MAX = 100

# CSV header name -> StudentRecord attribute
_FIELD_BY_COLUMN = {
    "gender": "gender",
    "NationalITy": "nationality",
    "PlaceofBirth": "place_of_birth",
    "StageID": "stage_id",
    "GradeID": "grade_id",
    "SectionID": "section_id",
    "Topic": "topic",
    "Semester": "semester",
    "Relation": "relation",
    "raisedhands": "raised_hands",
    "VisITedResources": "visited_resources",
    "AnnouncementsView": "announcements_view",
    "Discussion": "discussion",
    "ParentAnsweringSurvey": "parent_answering_survey",
    "ParentschoolSatisfaction": "parent_school_satisfaction",
    "StudentAbsenceDays": "student_absence_days",
    "Class": "class_label",
}


@dataclass(frozen=True)
class StudentRecord:
    gender: str
    nationality: str
    place_of_birth: str
    stage_id: str
    grade_id: str
    section_id: str
    topic: str
    semester: str
    relation: str
    raised_hands: int
    visited_resources: int
    announcements_view: int
    discussion: int
    parent_answering_survey: str
    parent_school_satisfaction: str
    student_absence_days: str
    class_label: str | None

    def value(self, column: str):
        """Field value by canonical CSV column name."""
        return getattr(self, _FIELD_BY_COLUMN[column])


@dataclass(frozen=True)
class RecordTable:
    records: tuple[StudentRecord, ...]
    source_name: str = "<memory>"

    def __len__(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class Violation:
    row: int  # 1-based data row
    column: str
    message: str

    def __str__(self) -> str:
        return f"row {self.row}, column {self.column}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class DatasetSummary:
    row_count: int
    categorical_counts: dict[str, dict[str, int]]
    numeric_stats: dict[str, dict[str, float]]

    def to_text(self) -> str:
        lines = [f"rows: {self.row_count}"]
        for column, counts in self.categorical_counts.items():
            ordered = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
            body = " ".join(f"{value}={n}" for value, n in ordered)
            lines.append(f"{column}: {body}")
        for column, stats in self.numeric_stats.items():
            lines.append(
                f"{column}: min={stats['min']:g} max={stats['max']:g} "
                f"mean={stats['mean']:.4f}"
            )
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        return {
            "rows": self.row_count,
            "columns": {c: dict(v) for c, v in self.categorical_counts.items()},
            "numeric": {c: dict(v) for c, v in self.numeric_stats.items()},
        }


def _parse_count(text: str, row: int, column: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise DatasetFormatError(
            f"row {row}, column {column}: expected an integer, got {text!r}"
        ) from None
    if not COUNT_MIN <= value <= COUNT_MAX:
        raise DatasetFormatError(
            f"row {row}, column {column}: {value} outside [{COUNT_MIN}, {COUNT_MAX}]"
        )
    return value


def parse_dataset(
    csv_text: str,
    source_name: str = "<memory>",
    require_label: bool = True,
) -> RecordTable:
    """Parse CSV text into a :class:`RecordTable`, preserving row order.

    The header must match :data:`CANONICAL_HEADER` exactly (names, order,
    count, case). With ``require_label=False`` a 16-column file without the
    trailing ``Class`` column is also accepted, for prediction inputs.
    Field values are stripped of surrounding whitespace.
    """
    reader = csv.reader(io.StringIO(csv_text))
    try:
        raw_header = next(reader)
    except StopIteration:
        raise DatasetFormatError("empty file: missing header") from None
    header = tuple(h.strip() for h in raw_header)

    expected = CANONICAL_HEADER
    has_label = True
    if header != expected:
        if not require_label and header == CANONICAL_HEADER[:-1]:
            expected = CANONICAL_HEADER[:-1]
            has_label = False
        else:
            raise DatasetFormatError(
                "header mismatch: expected "
                f"{','.join(expected)!r}, got {','.join(header)!r}"
            )

    records = []
    for row_number, raw in enumerate(reader, start=1):
        if not raw:
            continue  # tolerate a trailing blank line
        if len(raw) != len(expected):
            raise DatasetFormatError(
                f"row {row_number}: expected {len(expected)} fields, "
                f"got {len(raw)}"
            )
        values = [v.strip() for v in raw]
        by_column = dict(zip(expected, values))
        kwargs = {}
        for column in CANONICAL_HEADER:
            field = _FIELD_BY_COLUMN[column]
            if column == "Class" and not has_label:
                kwargs[field] = None
            elif column in COUNT_COLUMNS:
                kwargs[field] = _parse_count(by_column[column], row_number, column)
            else:
                kwargs[field] = by_column[column]
        records.append(StudentRecord(**kwargs))

    if not records:
        raise DatasetFormatError("no data rows")
    return RecordTable(records=tuple(records), source_name=source_name)


def serialize_dataset(table: RecordTable) -> str:
    """Render a table back to CSV with the canonical header."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CANONICAL_HEADER)
    for record in table.records:
        writer.writerow([record.value(column) for column in CANONICAL_HEADER])
    return out.getvalue()


def validate(table: RecordTable) -> ValidationReport:
    """Report every data-level violation; an empty report means a valid table."""
    violations = []
    for row_number, record in enumerate(table.records, start=1):
        for column in CANONICAL_HEADER:
            value = record.value(column)
            if column in COUNT_COLUMNS:
                if not isinstance(value, int) or isinstance(value, bool):
                    violations.append(
                        Violation(row_number, column, f"not an integer: {value!r}")
                    )
                elif not COUNT_MIN <= value <= COUNT_MAX:
                    violations.append(
                        Violation(
                            row_number,
                            column,
                            f"{value} outside [{COUNT_MIN}, {COUNT_MAX}]",
                        )
                    )
            elif value is None or value == "":
                violations.append(Violation(row_number, column, "empty field"))
            elif column == "Class" and value not in CLASS_LABELS:
                violations.append(
                    Violation(
                        row_number,
                        column,
                        f"unknown label {value!r}, expected one of "
                        f"{'/'.join(CLASS_LABELS)}",
                    )
                )
    return ValidationReport(violations=tuple(violations))


def summarize(table: RecordTable) -> DatasetSummary:
    """Exact value counts per categorical column, min/max/mean per count column."""
    categorical_counts: dict[str, dict[str, int]] = {}
    for column in CATEGORICAL_COLUMNS:
        counter = Counter(record.value(column) for record in table.records)
        categorical_counts[column] = dict(
            sorted(counter.items(), key=lambda kv: (-kv[1], str(kv[0])))
        )
    numeric_stats: dict[str, dict[str, float]] = {}
    for column in COUNT_COLUMNS:
        values = [record.value(column) for record in table.records]
        numeric_stats[column] = {
            "min": float(min(values)),
            "max": float(max(values)),
            "mean": sum(values) / len(values),
        }
    return DatasetSummary(
        row_count=len(table.records),
        categorical_counts=categorical_counts,
        numeric_stats=numeric_stats,
    )
