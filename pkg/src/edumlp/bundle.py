"""Self-contained model bundle: schema, scaler, and network in one JSON file.

A bundle is everything prediction needs besides the raw records. Floats are
written as shortest round-trip decimals (Python's ``repr``), which the JSON
parser restores bit-exactly, so saving and loading preserves every parameter.
``format_version`` guards against reading files written by an incompatible
layout.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .encoding import (
    ColumnSpec,
    FeatureKind,
    FeatureSchema,
    FittedSchema,
)
from .errors import BundleFormatError
from .network import MlpModel
from .scaling import FeatureScaler

FORMAT_VERSION = 1


@dataclass
class ModelBundle:
    fitted_schema: FittedSchema
    scaler: FeatureScaler
    model: MlpModel
    metadata: dict


def _schema_to_doc(fitted: FittedSchema) -> dict:
    return {
        "columns": [
            {
                "name": spec.name,
                "kind": spec.kind.value,
                "positive_value": spec.positive_value,
                "order": list(spec.order) if spec.order else None,
            }
            for spec in fitted.schema.columns
        ],
        "binary_values": {
            name: list(pair) for name, pair in fitted.binary_values.items()
        },
        "nominal_vocabs": {
            name: list(vocab) for name, vocab in fitted.nominal_vocabs.items()
        },
        "feature_names": list(fitted.feature_names),
        "label_order": list(fitted.label_order),
    }


def _schema_from_doc(doc: dict) -> FittedSchema:
    columns = tuple(
        ColumnSpec(
            name=entry["name"],
            kind=FeatureKind(entry["kind"]),
            positive_value=entry.get("positive_value"),
            order=tuple(entry["order"]) if entry.get("order") else None,
        )
        for entry in doc["columns"]
    )
    return FittedSchema(
        schema=FeatureSchema(columns=columns),
        binary_values={
            name: (pair[0], pair[1])
            for name, pair in doc["binary_values"].items()
        },
        nominal_vocabs={
            name: tuple(vocab)
            for name, vocab in doc["nominal_vocabs"].items()
        },
        feature_names=tuple(doc["feature_names"]),
        label_order=tuple(doc["label_order"]),
    )


def save_bundle(bundle: ModelBundle) -> str:
    metadata = dict(bundle.metadata)
    metadata.setdefault(
        "created_at", datetime.now(timezone.utc).isoformat(timespec="seconds")
    )
    doc = {
        "format_version": FORMAT_VERSION,
        "metadata": metadata,
        "schema": _schema_to_doc(bundle.fitted_schema),
        "scaler": {
            "mean": bundle.scaler.mean_.tolist(),
            "scale": bundle.scaler.scale_.tolist(),
            "std_floor": bundle.scaler.std_floor,
        },
        "mlp": {
            "layer_sizes": list(bundle.model.layer_sizes),
            "seed": bundle.model.seed,
            "weights": [w.tolist() for w in bundle.model.weights],
            "biases": [b.tolist() for b in bundle.model.biases],
        },
    }
    return json.dumps(doc, indent=None, sort_keys=True, allow_nan=False) + "\n"


def load_bundle(text: str) -> ModelBundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFormatError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise BundleFormatError("bundle must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise BundleFormatError(
            f"unsupported format_version {version!r}, expected {FORMAT_VERSION}"
        )
    try:
        fitted = _schema_from_doc(doc["schema"])
        scaler_doc = doc["scaler"]
        mlp_doc = doc["mlp"]
        layer_sizes = tuple(int(s) for s in mlp_doc["layer_sizes"])
        weights = [
            np.asarray(w, dtype=np.float64) for w in mlp_doc["weights"]
        ]
        biases = [np.asarray(b, dtype=np.float64) for b in mlp_doc["biases"]]
        scaler = FeatureScaler(std_floor=float(scaler_doc["std_floor"]))
        scaler.mean_ = np.asarray(scaler_doc["mean"], dtype=np.float64)
        scaler.scale_ = np.asarray(scaler_doc["scale"], dtype=np.float64)
        metadata = dict(doc["metadata"])
    except (KeyError, TypeError, ValueError) as exc:
        raise BundleFormatError(f"malformed bundle: {exc}") from None

    if len(weights) != len(layer_sizes) - 1 or len(biases) != len(weights):
        raise BundleFormatError("layer count does not match layer_sizes")
    for layer, (fan_in, fan_out) in enumerate(
        zip(layer_sizes[:-1], layer_sizes[1:])
    ):
        if weights[layer].shape != (fan_in, fan_out):
            raise BundleFormatError(
                f"weight matrix {layer} has shape {weights[layer].shape}, "
                f"expected {(fan_in, fan_out)}"
            )
        if biases[layer].shape != (fan_out,):
            raise BundleFormatError(
                f"bias vector {layer} has shape {biases[layer].shape}, "
                f"expected {(fan_out,)}"
            )
    width = len(fitted.feature_names)
    if scaler.mean_.shape != (width,) or scaler.scale_.shape != (width,):
        raise BundleFormatError("scaler vectors do not match feature width")
    if layer_sizes[0] != width:
        raise BundleFormatError(
            f"model input size {layer_sizes[0]} does not match "
            f"feature width {width}"
        )

    model = MlpModel(
        layer_sizes=layer_sizes,
        weights=weights,
        biases=biases,
        seed=int(mlp_doc.get("seed", 0)),
    )
    return ModelBundle(
        fitted_schema=fitted, scaler=scaler, model=model, metadata=metadata
    )


def write_bundle(bundle: ModelBundle, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(save_bundle(bundle))


def read_bundle(path: str) -> ModelBundle:
    with open(path, "r", encoding="utf-8") as fh:
        return load_bundle(fh.read())
