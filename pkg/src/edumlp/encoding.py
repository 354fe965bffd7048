"""Feature schema and table-to-matrix encoding.

The 17 raw columns fall into five kinds: binary (two-valued, mapped to 0/1),
ordinal (explicit value order, mapped to rank), numeric (activity counts,
passed through), nominal (one-hot expanded with ``column_value`` names), and
the single label column (``Class`` -> 0/1/2). On the standard dataset this
yields 55 feature columns plus the label.

:class:`SchemaEncoder` follows the sklearn transformer protocol: ``fit``
learns nominal vocabularies and binary polarities from a
:class:`~edumlp.dataset.RecordTable`, ``transform`` produces the float64
feature matrix. Unseen categories at transform time raise
:class:`~edumlp.errors.EncodingError` instead of silently emitting zeros,
since an all-zero one-hot block would corrupt standardization downstream.
"""

from __future__ import annotations

import enum
import io
import json
import csv as _csv
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .checks import check_fitted
from .dataset import CANONICAL_HEADER, COUNT_COLUMNS, RecordTable
from .errors import EncodingError

LABEL_ORDER = ("L", "M", "H")
LABEL_COLUMN = "Class"


class FeatureKind(enum.Enum):
    BINARY = "binary"
    ORDINAL = "ordinal"
    NOMINAL = "nominal"
    NUMERIC = "numeric"
    LABEL = "label"


@dataclass(frozen=True)
class ColumnSpec:
    name: str
    kind: FeatureKind
    positive_value: str | None = None  # binary only; None = resolve at fit
    order: tuple[str, ...] | None = None  # ordinal and label


@dataclass(frozen=True)
class FeatureSchema:
    columns: tuple[ColumnSpec, ...]

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if sorted(names) != sorted(CANONICAL_HEADER):
            raise ValueError(
                "schema must cover exactly the 17 canonical columns"
            )
        labels = [c for c in self.columns if c.kind is FeatureKind.LABEL]
        if len(labels) != 1:
            raise ValueError("schema must declare exactly one label column")
        for spec in self.columns:
            if spec.kind in (FeatureKind.ORDINAL, FeatureKind.LABEL):
                if not spec.order:
                    raise ValueError(
                        f"column {spec.name}: {spec.kind.value} requires an "
                        "explicit value order"
                    )

    def column(self, name: str) -> ColumnSpec:
        for spec in self.columns:
            if spec.name == name:
                return spec
        raise KeyError(name)

    @property
    def label_column(self) -> ColumnSpec:
        return next(c for c in self.columns if c.kind is FeatureKind.LABEL)


@dataclass(frozen=True)
class FittedSchema:
    schema: FeatureSchema
    binary_values: dict[str, tuple[str, str]]  # column -> (negative, positive)
    nominal_vocabs: dict[str, tuple[str, ...]]  # column -> sorted values
    feature_names: tuple[str, ...]
    label_order: tuple[str, ...]

    @property
    def width(self) -> int:
        return len(self.feature_names)


@dataclass(frozen=True)
class DesignMatrix:
    column_names: tuple[str, ...]
    features: np.ndarray  # (n_rows, n_features) float64
    labels: np.ndarray | None  # (n_rows,) int64, or None for unlabeled rows


_GRADE_ORDER = tuple(f"G-{n:02d}" for n in range(1, 13))
_STAGE_ORDER = ("lowerlevel", "MiddleSchool", "HighSchool")


def default_schema() -> FeatureSchema:
    """Schema for the standard export: 6 binary, 2 ordinal, 4 numeric,
    4 nominal columns and the label."""
    K = FeatureKind
    return FeatureSchema(
        columns=(
            ColumnSpec("gender", K.BINARY, positive_value="M"),
            ColumnSpec("NationalITy", K.NOMINAL),
            ColumnSpec("PlaceofBirth", K.NOMINAL),
            ColumnSpec("StageID", K.ORDINAL, order=_STAGE_ORDER),
            ColumnSpec("GradeID", K.ORDINAL, order=_GRADE_ORDER),
            ColumnSpec("SectionID", K.NOMINAL),
            ColumnSpec("Topic", K.NOMINAL),
            ColumnSpec("Semester", K.BINARY),
            ColumnSpec("Relation", K.BINARY),
            ColumnSpec("raisedhands", K.NUMERIC),
            ColumnSpec("VisITedResources", K.NUMERIC),
            ColumnSpec("AnnouncementsView", K.NUMERIC),
            ColumnSpec("Discussion", K.NUMERIC),
            ColumnSpec("ParentAnsweringSurvey", K.BINARY),
            ColumnSpec("ParentschoolSatisfaction", K.BINARY),
            ColumnSpec("StudentAbsenceDays", K.BINARY),
            ColumnSpec(LABEL_COLUMN, K.LABEL, order=LABEL_ORDER),
        )
    )


def schema_from_json_dict(doc: dict) -> FeatureSchema:
    """Build a schema from the JSON document format.

    The document maps column name to ``{"kind": ..., "positive_value": ...,
    "order": [...]}``. Column order follows the canonical header.
    """
    if not isinstance(doc, dict):
        raise ValueError("schema document must be a JSON object")
    unknown = set(doc) - set(CANONICAL_HEADER)
    if unknown:
        raise ValueError(f"schema names unknown columns: {sorted(unknown)}")
    missing = set(CANONICAL_HEADER) - set(doc)
    if missing:
        raise ValueError(f"schema is missing columns: {sorted(missing)}")
    columns = []
    for name in CANONICAL_HEADER:
        entry = doc[name]
        try:
            kind = FeatureKind(entry["kind"])
        except (KeyError, TypeError, ValueError):
            raise ValueError(f"column {name}: missing or invalid kind") from None
        order = entry.get("order")
        columns.append(
            ColumnSpec(
                name=name,
                kind=kind,
                positive_value=entry.get("positive_value"),
                order=tuple(order) if order is not None else None,
            )
        )
    return FeatureSchema(columns=tuple(columns))


def load_schema_file(path: str) -> FeatureSchema:
    with open(path, "r", encoding="utf-8") as fh:
        return schema_from_json_dict(json.load(fh))


def fit_schema(table: RecordTable, schema: FeatureSchema) -> FittedSchema:
    """Learn vocabularies and binary polarities from data.

    Binary columns must hold exactly two distinct values; unless a
    positive value is declared, the lexicographically later value maps
    to 1. Nominal vocabularies are sorted for determinism independent of
    row order. Ordinal and label values must appear in the declared order.
    """
    binary_values: dict[str, tuple[str, str]] = {}
    nominal_vocabs: dict[str, tuple[str, ...]] = {}
    feature_names: list[str] = []

    for spec in schema.columns:
        if spec.kind is FeatureKind.LABEL:
            for record in table.records:
                value = record.value(spec.name)
                if value is not None and value not in spec.order:
                    raise EncodingError(
                        f"column {spec.name}: unknown label {value!r}"
                    )
            continue
        values = [record.value(spec.name) for record in table.records]
        if spec.kind is FeatureKind.BINARY:
            distinct = sorted(set(values))
            if len(distinct) != 2:
                raise EncodingError(
                    f"column {spec.name}: binary column has {len(distinct)} "
                    f"distinct values {distinct!r}, expected 2"
                )
            if spec.positive_value is not None:
                if spec.positive_value not in distinct:
                    raise EncodingError(
                        f"column {spec.name}: declared positive value "
                        f"{spec.positive_value!r} not present in data"
                    )
                positive = spec.positive_value
                negative = next(v for v in distinct if v != positive)
            else:
                negative, positive = distinct  # later value maps to 1
            binary_values[spec.name] = (negative, positive)
            feature_names.append(spec.name)
        elif spec.kind is FeatureKind.ORDINAL:
            for value in values:
                if value not in spec.order:
                    raise EncodingError(
                        f"column {spec.name}: value {value!r} absent from "
                        "declared order"
                    )
            feature_names.append(spec.name)
        elif spec.kind is FeatureKind.NUMERIC:
            feature_names.append(spec.name)
        elif spec.kind is FeatureKind.NOMINAL:
            vocab = tuple(sorted(set(values)))
            nominal_vocabs[spec.name] = vocab
            feature_names.extend(f"{spec.name}_{value}" for value in vocab)

    return FittedSchema(
        schema=schema,
        binary_values=binary_values,
        nominal_vocabs=nominal_vocabs,
        feature_names=tuple(feature_names),
        label_order=tuple(schema.label_column.order),
    )


def encode_features(table: RecordTable, fitted: FittedSchema) -> np.ndarray:
    """Encode the 16 feature columns to an (n_rows, width) float64 matrix."""
    n = len(table.records)
    out = np.zeros((n, fitted.width), dtype=np.float64)
    for i, record in enumerate(table.records):
        j = 0
        for spec in fitted.schema.columns:
            if spec.kind is FeatureKind.LABEL:
                continue
            value = record.value(spec.name)
            if spec.kind is FeatureKind.BINARY:
                negative, positive = fitted.binary_values[spec.name]
                if value == positive:
                    out[i, j] = 1.0
                elif value != negative:
                    raise EncodingError(
                        f"column {spec.name}: unseen value {value!r}"
                    )
                j += 1
            elif spec.kind is FeatureKind.ORDINAL:
                try:
                    out[i, j] = spec.order.index(value)
                except ValueError:
                    raise EncodingError(
                        f"column {spec.name}: unseen value {value!r}"
                    ) from None
                j += 1
            elif spec.kind is FeatureKind.NUMERIC:
                out[i, j] = float(value)
                j += 1
            else:  # nominal
                vocab = fitted.nominal_vocabs[spec.name]
                try:
                    out[i, j + vocab.index(value)] = 1.0
                except ValueError:
                    raise EncodingError(
                        f"column {spec.name}: unseen value {value!r}"
                    ) from None
                j += len(vocab)
    return out


def encode(table: RecordTable, fitted: FittedSchema) -> DesignMatrix:
    """Encode features and labels; every record must carry a class label."""
    features = encode_features(table, fitted)
    labels = np.empty(len(table.records), dtype=np.int64)
    for i, record in enumerate(table.records):
        value = record.value(LABEL_COLUMN)
        if value is None:
            raise EncodingError(f"row {i + 1}: missing class label")
        try:
            labels[i] = fitted.label_order.index(value)
        except ValueError:
            raise EncodingError(
                f"column {LABEL_COLUMN}: unknown label {value!r}"
            ) from None
    return DesignMatrix(
        column_names=fitted.feature_names, features=features, labels=labels
    )


def encode_label(class_label: str) -> int:
    """L -> 0, M -> 1, H -> 2 (grade bands in ascending order)."""
    try:
        return LABEL_ORDER.index(class_label)
    except ValueError:
        raise EncodingError(f"unknown label {class_label!r}") from None


def decode_label(index: int) -> str:
    if not 0 <= index < len(LABEL_ORDER):
        raise EncodingError(f"label index {index} out of range")
    return LABEL_ORDER[index]


def design_matrix_to_csv(matrix: DesignMatrix) -> str:
    """Encoded matrix as CSV; the label, when present, is the final
    ``Class`` column."""
    out = io.StringIO()
    writer = _csv.writer(out, lineterminator="\n")
    header = list(matrix.column_names)
    if matrix.labels is not None:
        header.append(LABEL_COLUMN)
    writer.writerow(header)
    for i in range(matrix.features.shape[0]):
        row = [repr(float(x)) for x in matrix.features[i]]
        if matrix.labels is not None:
            row.append(int(matrix.labels[i]))
        writer.writerow(row)
    return out.getvalue()


class SchemaEncoder(BaseEstimator, TransformerMixin):
    """Sklearn-style transformer from raw record tables to feature matrices.

    Parameters
    ----------
    schema:
        Optional :class:`FeatureSchema`; defaults to :func:`default_schema`.
    """

    def __init__(self, schema: FeatureSchema | None = None):
        self.schema = schema

    def fit(self, table: RecordTable, y=None) -> "SchemaEncoder":
        schema = self.schema if self.schema is not None else default_schema()
        self.fitted_schema_ = fit_schema(table, schema)
        return self

    def transform(self, table: RecordTable) -> np.ndarray:
        check_fitted(self, "fitted_schema_")
        return encode_features(table, self.fitted_schema_)

    def encode_table(self, table: RecordTable) -> DesignMatrix:
        """Features plus encoded labels, for labeled tables."""
        check_fitted(self, "fitted_schema_")
        return encode(table, self.fitted_schema_)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_fitted(self, "fitted_schema_")
        return np.asarray(self.fitted_schema_.feature_names, dtype=object)
