"""Column standardization and seeded train/validation/test partitioning."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .checks import as_float_matrix, check_fitted, check_width
from .rng import Xorshift64Star


class FeatureScaler(BaseEstimator, TransformerMixin):
    """Z-scores columns with population statistics.

    Columns whose population standard deviation falls below ``std_floor``
    are treated as constant: their scale is forced to 1 so they map to
    exactly 0 instead of blowing up.

    Attributes (after fit): ``mean_``, ``scale_`` (both length n_features).
    """

    def __init__(self, std_floor: float = 1e-12):
        self.std_floor = std_floor

    def fit(self, X, y=None) -> "FeatureScaler":
        X = as_float_matrix(X)
        if X.shape[0] == 0:
            raise ValueError("cannot fit scaler on an empty matrix")
        self.mean_ = X.mean(axis=0)
        std = X.std(axis=0)  # population: divides by n
        self.scale_ = np.where(std < self.std_floor, 1.0, std)
        return self

    def transform(self, X) -> np.ndarray:
        check_fitted(self, "scale_")
        X = as_float_matrix(X)
        check_width(X, self.mean_.shape[0])
        return (X - self.mean_) / self.scale_

    def inverse_transform(self, X) -> np.ndarray:
        check_fitted(self, "scale_")
        X = as_float_matrix(X)
        check_width(X, self.mean_.shape[0])
        return X * self.scale_ + self.mean_


@dataclass(frozen=True)
class SplitIndices:
    train: tuple[int, ...]
    val: tuple[int, ...]
    test: tuple[int, ...]
    seed: int


def split(
    n_rows: int,
    labels=None,
    test_fraction: float = 0.2,
    val_fraction: float = 0.2,
    seed: int = 0,
) -> SplitIndices:
    """Partition row indices into train/val/test.

    Indices 0..n-1 are shuffled by :class:`~edumlp.rng.Xorshift64Star`
    seeded with ``seed``; the test set takes the first
    ``floor(n * test_fraction)`` shuffled indices, validation the next
    ``floor(n * val_fraction)``, training the remainder. No stratification:
    ``labels`` is accepted for interface symmetry and only length-checked.
    """
    if n_rows < 1:
        raise ValueError("n_rows must be >= 1")
    if test_fraction < 0 or val_fraction < 0:
        raise ValueError("fractions must be non-negative")
    if test_fraction + val_fraction >= 1:
        raise ValueError("test_fraction + val_fraction must be < 1")
    if labels is not None and len(labels) != n_rows:
        raise ValueError("labels length does not match n_rows")

    order = Xorshift64Star(seed).permutation(n_rows)
    n_test = int(n_rows * test_fraction)
    n_val = int(n_rows * val_fraction)
    return SplitIndices(
        train=tuple(order[n_test + n_val:]),
        val=tuple(order[n_test:n_test + n_val]),
        test=tuple(order[:n_test]),
        seed=seed,
    )


def save_split_manifest(indices: SplitIndices, path: str) -> None:
    doc = {
        "seed": indices.seed,
        "test_indices": list(indices.test),
        "val_indices": list(indices.val),
        "train_indices": list(indices.train),
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh)
        fh.write("\n")


def load_split_manifest(path: str) -> SplitIndices:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        return SplitIndices(
            train=tuple(int(i) for i in doc["train_indices"]),
            val=tuple(int(i) for i in doc["val_indices"]),
            test=tuple(int(i) for i in doc["test_indices"]),
            seed=int(doc["seed"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed split manifest {path}: {exc}") from None
