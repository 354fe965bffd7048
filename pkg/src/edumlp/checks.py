"""Input validation helpers used by the estimators and numeric kernels."""

from __future__ import annotations

import numpy as np


def as_float_matrix(X, name: str = "X") -> np.ndarray:
    """Coerce to a 2-D float64 array, rejecting anything else."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    return arr

def as_label_vector(y, n_classes: int, name: str = "y") -> np.ndarray:
    """Coerce to a 1-D int array with entries in [0, n_classes)."""
    arr = np.asarray(y)
    if arr.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional, got ndim={arr.ndim}")
    if arr.size and not np.issubdtype(arr.dtype, np.integer):
        if not np.all(arr == np.floor(arr)):
            raise ValueError(f"{name} must contain integers")
    arr = arr.astype(np.int64)
    if arr.size and (arr.min() < 0 or arr.max() >= n_classes):
        raise ValueError(f"{name} entries must lie in [0, {n_classes})")
    return arr

def check_width(X: np.ndarray, expected: int, name: str = "X") -> None:
    if X.shape[1] != expected:
        raise ValueError(
            f"{name} has {X.shape[1]} columns, expected {expected}"
        )

def check_finite(arr: np.ndarray, name: str) -> None:
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")

def check_fitted(obj, attribute: str) -> None:
    if getattr(obj, attribute, None) is None:
        raise RuntimeError(
            f"{type(obj).__name__} is not fitted yet; call fit() first"
        )
