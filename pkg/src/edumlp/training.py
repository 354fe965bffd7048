"""Mini-batch training loop, evaluation metrics, and history export.

Per-epoch training metrics default to progress-bar semantics: the loss is
the mean of the per-batch losses and the accuracy is the fraction of rows
predicted correctly by the forward pass of the step that consumed them,
both accumulated while the parameters move. Setting
``post_epoch_metrics=True`` recomputes both on a full pass with the
end-of-epoch parameters instead.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .checks import as_float_matrix, as_label_vector
from .network import MlpModel, backward, forward, loss_sce, predict
from .optim import AdamParams, AdamState, adam_init, adam_step
from .rng import Xorshift64Star

N_CLASSES = 3

HISTORY_HEADER = ("epoch", "train_loss", "train_acc", "val_loss", "val_acc")


@dataclass(frozen=True)
class TrainConfig:
    epochs: int = 30
    batch_size: int = 16
    seed: int = 0
    shuffle_each_epoch: bool = True
    post_epoch_metrics: bool = False

    def __post_init__(self):
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class TrainHistory:
    train_loss: list[float] = field(default_factory=list)
    train_acc: list[float] = field(default_factory=list)
    val_loss: list[float] = field(default_factory=list)
    val_acc: list[float] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.train_loss)


@dataclass(frozen=True)
class Metrics:
    loss: float
    accuracy: float
    confusion: np.ndarray  # (N_CLASSES, N_CLASSES) int64, rows = true class


def confusion_matrix(predicted, actual) -> np.ndarray:
    """Entry (i, j) counts rows with actual class i predicted as j."""
    predicted = as_label_vector(predicted, N_CLASSES, "predicted")
    actual = as_label_vector(actual, N_CLASSES, "actual")
    if predicted.shape != actual.shape:
        raise ValueError("predicted and actual must have equal length")
    matrix = np.zeros((N_CLASSES, N_CLASSES), dtype=np.int64)
    np.add.at(matrix, (actual, predicted), 1)
    return matrix


def evaluate(model: MlpModel, X, y) -> Metrics:
    X = as_float_matrix(X)
    if X.shape[0] == 0:
        raise ValueError("cannot evaluate on an empty dataset")
    y = as_label_vector(y, model.layer_sizes[-1])
    trace = forward(model, X)
    loss = loss_sce(trace.probabilities, y)
    predicted = np.argmax(trace.probabilities, axis=1)
    confusion = confusion_matrix(predicted, y)
    accuracy = float(np.trace(confusion)) / len(y)
    return Metrics(loss=loss, accuracy=accuracy, confusion=confusion)


def train(
    model: MlpModel,
    train_set: tuple[np.ndarray, np.ndarray],
    val_set: tuple[np.ndarray, np.ndarray] | None,
    config: TrainConfig,
    adam: AdamParams = AdamParams(),
) -> tuple[MlpModel, TrainHistory]:
    """Run the mini-batch loop; returns the final model and per-epoch history.

    Each epoch shuffles the training rows with the pipeline PRNG seeded
    ``config.seed + epoch_index``, walks them in batches of
    ``config.batch_size`` (final short batch kept), and applies one Adam
    step per batch. Validation metrics never update parameters; with no
    validation set they are recorded as NaN.
    """
    X, y = train_set
    X = as_float_matrix(X)
    if X.shape[0] == 0:
        raise ValueError("training set is empty")
    y = as_label_vector(y, model.layer_sizes[-1])
    if y.shape[0] != X.shape[0]:
        raise ValueError("feature and label row counts differ")

    state: AdamState = adam_init(model, adam)
    history = TrainHistory()
    n = X.shape[0]
    for epoch in range(config.epochs):
        order = list(range(n))
        if config.shuffle_each_epoch:
            Xorshift64Star(config.seed + epoch).shuffle(order)
        batch_losses = []
        correct = 0
        for start in range(0, n, config.batch_size):
            rows = order[start:start + config.batch_size]
            xb, yb = X[rows], y[rows]
            trace = forward(model, xb)
            batch_losses.append(loss_sce(trace.probabilities, yb))
            correct += int((np.argmax(trace.probabilities, axis=1) == yb).sum())
            grads = backward(model, trace, yb)
            model, state = adam_step(state, model, grads)

        if config.post_epoch_metrics:
            epoch_metrics = evaluate(model, X, y)
            history.train_loss.append(epoch_metrics.loss)
            history.train_acc.append(epoch_metrics.accuracy)
        else:
            history.train_loss.append(float(np.mean(batch_losses)))
            history.train_acc.append(correct / n)

        if val_set is not None and len(val_set[1]) > 0:
            val_metrics = evaluate(model, val_set[0], val_set[1])
            history.val_loss.append(val_metrics.loss)
            history.val_acc.append(val_metrics.accuracy)
        else:
            history.val_loss.append(math.nan)
            history.val_acc.append(math.nan)

    return model, history


def history_to_csv(history: TrainHistory) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(HISTORY_HEADER)
    for i in range(len(history)):
        writer.writerow(
            [
                i + 1,
                repr(history.train_loss[i]),
                repr(history.train_acc[i]),
                repr(history.val_loss[i]),
                repr(history.val_acc[i]),
            ]
        )
    return out.getvalue()


def history_from_csv(text: str) -> TrainHistory:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(header) != HISTORY_HEADER:
        raise ValueError(
            f"history header must be {','.join(HISTORY_HEADER)!r}"
        )
    history = TrainHistory()
    for row in reader:
        if not row:
            continue
        if len(row) != len(HISTORY_HEADER):
            raise ValueError(f"history row has {len(row)} fields")
        history.train_loss.append(float(row[1]))
        history.train_acc.append(float(row[2]))
        history.val_loss.append(float(row[3]))
        history.val_acc.append(float(row[4]))
    return history
