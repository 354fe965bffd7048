"""Sklearn-style classifier wrapping the network, optimizer, and loop."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin

from .checks import as_float_matrix, check_fitted
from .network import forward, init_mlp
from .optim import AdamParams
from .training import Metrics, N_CLASSES, TrainConfig, evaluate, train


class MlpClassifier(BaseEstimator, ClassifierMixin):
    """Three-class dense network trained with Adam on softmax cross-entropy.

    The architecture is ``n_features -> hidden_layer_sizes -> 3`` with ReLU
    hidden activations. Training is bit-reproducible for a given seed; see
    ``history_`` for the per-epoch loss/accuracy series after ``fit``.
    """

    def __init__(
        self,
        hidden_layer_sizes: tuple[int, ...] = (64, 64),
        epochs: int = 30,
        batch_size: int = 16,
        learning_rate: float = 0.001,
        beta1: float = 0.9,
        beta2: float = 0.999,
        epsilon: float = 1e-7,
        seed: int = 0,
        shuffle: bool = True,
        post_epoch_metrics: bool = False,
    ):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.epochs = epochs
        self.batch_size = batch_size
        self.learning_rate = learning_rate
        self.beta1 = beta1
        self.beta2 = beta2
        self.epsilon = epsilon
        self.seed = seed
        self.shuffle = shuffle
        self.post_epoch_metrics = post_epoch_metrics

    def fit(self, X, y, validation_data=None) -> "MlpClassifier":
        X = as_float_matrix(X)
        layer_sizes = (X.shape[1], *self.hidden_layer_sizes, N_CLASSES)
        model = init_mlp(layer_sizes, self.seed)
        config = TrainConfig(
            epochs=self.epochs,
            batch_size=self.batch_size,
            seed=self.seed,
            shuffle_each_epoch=self.shuffle,
            post_epoch_metrics=self.post_epoch_metrics,
        )
        adam = AdamParams(
            learning_rate=self.learning_rate,
            beta1=self.beta1,
            beta2=self.beta2,
            epsilon=self.epsilon,
        )
        self.model_, self.history_ = train(
            model, (X, y), validation_data, config, adam
        )
        self.classes_ = np.arange(N_CLASSES)
        self.n_features_in_ = X.shape[1]
        return self

    def predict_proba(self, X) -> np.ndarray:
        check_fitted(self, "model_")
        return forward(self.model_, X).probabilities

    def predict(self, X) -> np.ndarray:
        return np.argmax(self.predict_proba(X), axis=1)

    def evaluate(self, X, y) -> Metrics:
        check_fitted(self, "model_")
        return evaluate(self.model_, X, y)
