"""Dense feed-forward network: parameters, forward pass, loss, gradients.

Hidden layers are affine maps followed by ReLU; the output layer is affine
followed by a max-shifted softmax. Gradients are the exact analytic
derivatives of the mean cross-entropy through that graph, verified against
central finite differences in the test suite. All arithmetic is float64.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .checks import as_float_matrix, as_label_vector, check_finite, check_width
from .rng import Xorshift64Star

PROB_CLAMP = 1e-12


@dataclass
class MlpModel:
    layer_sizes: tuple[int, ...]
    weights: list[np.ndarray]  # per layer, (fan_in, fan_out)
    biases: list[np.ndarray]  # per layer, (fan_out,)
    seed: int

    @property
    def n_layers(self) -> int:
        return len(self.weights)


@dataclass
class ForwardTrace:
    inputs: np.ndarray  # (batch, n_in)
    pre_activations: list[np.ndarray]  # z per layer
    activations: list[np.ndarray]  # relu(z) per hidden layer
    probabilities: np.ndarray  # (batch, n_classes)


@dataclass
class Gradients:
    weights: list[np.ndarray]
    biases: list[np.ndarray]


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


def softmax(z: np.ndarray) -> np.ndarray:
    """Row-wise softmax with max subtraction, so huge logits cannot overflow."""
    z = np.asarray(z, dtype=np.float64)
    shifted = z - z.max(axis=-1, keepdims=True)
    exps = np.exp(shifted)
    return exps / exps.sum(axis=-1, keepdims=True)


def param_count(layer_sizes) -> int:
    sizes = tuple(layer_sizes)
    if len(sizes) < 2:
        raise ValueError("need at least an input and an output size")
    return sum(
        fan_in * fan_out + fan_out
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:])
    )


def init_mlp(layer_sizes, seed: int) -> MlpModel:
    """Glorot-uniform weights (limit sqrt(6/(fan_in+fan_out))), zero biases.

    Deterministic per seed: one Xorshift64Star stream fills each weight
    matrix in row-major order, layer by layer.
    """
    sizes = tuple(int(s) for s in layer_sizes)
    if len(sizes) < 2 or any(s <= 0 for s in sizes):
        raise ValueError(f"invalid layer sizes {sizes!r}")
    rng = Xorshift64Star(seed)
    weights = []
    biases = []
    for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        w = np.empty((fan_in, fan_out), dtype=np.float64)
        for r in range(fan_in):
            for c in range(fan_out):
                w[r, c] = (2.0 * rng.random() - 1.0) * limit
        weights.append(w)
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return MlpModel(layer_sizes=sizes, weights=weights, biases=biases, seed=seed)


def forward(model: MlpModel, batch) -> ForwardTrace:
    batch = as_float_matrix(batch, "batch")
    check_width(batch, model.layer_sizes[0], "batch")
    pre_activations = []
    activations = []
    a = batch
    last = model.n_layers - 1
    for layer, (w, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ w + b
        pre_activations.append(z)
        if layer < last:
            a = relu(z)
            activations.append(a)
    probabilities = softmax(pre_activations[-1])
    return ForwardTrace(
        inputs=batch,
        pre_activations=pre_activations,
        activations=activations,
        probabilities=probabilities,
    )


def loss_sce(probabilities, labels) -> float:
    """Mean negative log-probability of the true class, clamped away from 0."""
    probabilities = as_float_matrix(probabilities, "probabilities")
    labels = as_label_vector(labels, probabilities.shape[1], "labels")
    picked = probabilities[np.arange(len(labels)), labels]
    return float(-np.log(np.clip(picked, PROB_CLAMP, 1.0)).mean())


def backward(model: MlpModel, trace: ForwardTrace, labels) -> Gradients:
    """Analytic gradients of ``loss_sce(forward(model, batch), labels)``.

    Output delta is (probabilities - one_hot) / batch_size; hidden deltas
    are gated by the sign of the pre-activations.
    """
    n_classes = model.layer_sizes[-1]
    labels = as_label_vector(labels, n_classes, "labels")
    batch_size = trace.inputs.shape[0]
    if labels.shape[0] != batch_size:
        raise ValueError("labels length does not match the traced batch")

    delta = trace.probabilities.copy()
    delta[np.arange(batch_size), labels] -= 1.0
    delta /= batch_size

    grad_w: list[np.ndarray] = [None] * model.n_layers
    grad_b: list[np.ndarray] = [None] * model.n_layers
    for layer in range(model.n_layers - 1, -1, -1):
        a_prev = trace.inputs if layer == 0 else trace.activations[layer - 1]
        grad_w[layer] = a_prev.T @ delta
        grad_b[layer] = delta.sum(axis=0)
        if layer > 0:
            delta = (delta @ model.weights[layer].T) * (
                trace.pre_activations[layer - 1] > 0.0
            )
    return Gradients(weights=grad_w, biases=grad_b)


def predict(model: MlpModel, batch) -> np.ndarray:
    """Argmax class per row; ties resolve to the lowest class index."""
    return np.argmax(forward(model, batch).probabilities, axis=1)


def clone_model(model: MlpModel) -> MlpModel:
    return MlpModel(
        layer_sizes=model.layer_sizes,
        weights=[w.copy() for w in model.weights],
        biases=[b.copy() for b in model.biases],
        seed=model.seed,
    )


def check_shape_congruent(model: MlpModel, grads: Gradients) -> None:
    if len(grads.weights) != model.n_layers or len(grads.biases) != model.n_layers:
        raise ValueError("gradient layer count does not match the model")
    for w, gw, b, gb in zip(model.weights, grads.weights, model.biases, grads.biases):
        if gw.shape != w.shape or gb.shape != b.shape:
            raise ValueError("gradient shapes do not match the model")
        check_finite(gw, "weight gradient")
        check_finite(gb, "bias gradient")
