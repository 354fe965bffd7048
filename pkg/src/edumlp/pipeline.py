"""End-to-end training pipeline: encode, scale, split, train, evaluate.

The default order standardizes on the full feature matrix before
splitting, like the original prototype; ``scale_after_split=True`` fits
the scaler on the training partition only, the leakage-free variant.
Every random choice derives from the single ``seed``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundle import ModelBundle
from .dataset import RecordTable
from .encoding import FeatureSchema, SchemaEncoder
from .network import init_mlp
from .optim import AdamParams
from .scaling import FeatureScaler, SplitIndices, split
from .training import Metrics, TrainConfig, TrainHistory, evaluate, train


@dataclass(frozen=True)
class PipelineConfig:
    epochs: int = 30
    batch_size: int = 16
    seed: int = 0
    test_fraction: float = 0.2
    val_fraction: float = 0.2
    scale_after_split: bool = False
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-7
    post_epoch_metrics: bool = False
    hidden_layer_sizes: tuple[int, ...] = (64, 64)


@dataclass
class PipelineResult:
    bundle: ModelBundle
    history: TrainHistory
    split: SplitIndices
    train_metrics: Metrics
    val_metrics: Metrics | None
    test_metrics: Metrics | None


def run_training(
    table: RecordTable,
    config: PipelineConfig = PipelineConfig(),
    schema: FeatureSchema | None = None,
) -> PipelineResult:
    encoder = SchemaEncoder(schema=schema).fit(table)
    matrix = encoder.encode_table(table)
    y = matrix.labels

    indices = split(
        n_rows=matrix.features.shape[0],
        labels=y,
        test_fraction=config.test_fraction,
        val_fraction=config.val_fraction,
        seed=config.seed,
    )
    scaler = FeatureScaler()
    if config.scale_after_split:
        scaler.fit(matrix.features[list(indices.train)])
    else:
        scaler.fit(matrix.features)
    X = scaler.transform(matrix.features)

    train_rows = list(indices.train)
    val_rows = list(indices.val)
    test_rows = list(indices.test)
    train_set = (X[train_rows], y[train_rows])
    val_set = (X[val_rows], y[val_rows]) if val_rows else None

    model = init_mlp(
        (X.shape[1], *config.hidden_layer_sizes, 3), config.seed
    )
    model, history = train(
        model,
        train_set,
        val_set,
        TrainConfig(
            epochs=config.epochs,
            batch_size=config.batch_size,
            seed=config.seed,
            post_epoch_metrics=config.post_epoch_metrics,
        ),
        AdamParams(
            learning_rate=config.learning_rate,
            beta1=config.beta1,
            beta2=config.beta2,
            epsilon=config.epsilon,
        ),
    )

    metadata = {
        "seed": config.seed,
        "epochs": config.epochs,
        "batch_size": config.batch_size,
        "test_fraction": config.test_fraction,
        "val_fraction": config.val_fraction,
        "scale_after_split": config.scale_after_split,
        "learning_rate": config.learning_rate,
        "beta1": config.beta1,
        "beta2": config.beta2,
        "epsilon": config.epsilon,
        "post_epoch_metrics": config.post_epoch_metrics,
        "n_rows": int(matrix.features.shape[0]),
        "source": table.source_name,
    }
    bundle = ModelBundle(
        fitted_schema=encoder.fitted_schema_,
        scaler=scaler,
        model=model,
        metadata=metadata,
    )
    return PipelineResult(
        bundle=bundle,
        history=history,
        split=indices,
        train_metrics=evaluate(model, *train_set),
        val_metrics=evaluate(model, X[val_rows], y[val_rows]) if val_rows else None,
        test_metrics=evaluate(model, X[test_rows], y[test_rows]) if test_rows else None,
    )


def apply_bundle(bundle: ModelBundle, table: RecordTable) -> np.ndarray:
    """Scaled feature matrix for raw records under a trained bundle."""
    from .encoding import encode_features

    features = encode_features(table, bundle.fitted_schema)
    return bundle.scaler.transform(features)
