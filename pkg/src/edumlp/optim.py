"""Adam optimizer and the finite-difference gradient oracle.

The update follows the bias-corrected form with epsilon added outside the
square root::

    m <- b1*m + (1-b1)*g        m_hat = m / (1 - b1^t)
    v <- b2*v + (1-b2)*g^2      v_hat = v / (1 - b2^t)
    theta <- theta - lr * m_hat / (sqrt(v_hat) + eps)

Steps are functional: ``adam_step`` returns a new model and a new state,
leaving its inputs untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .network import (
    Gradients,
    MlpModel,
    check_shape_congruent,
    forward,
    loss_sce,
)


@dataclass(frozen=True)
class AdamParams:
    learning_rate: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-7

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if not 0 <= self.beta1 < 1 or not 0 <= self.beta2 < 1:
            raise ValueError("beta1 and beta2 must lie in [0, 1)")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


@dataclass
class AdamState:
    params: AdamParams
    t: int
    m_weights: list[np.ndarray]
    m_biases: list[np.ndarray]
    v_weights: list[np.ndarray]
    v_biases: list[np.ndarray]


def adam_init(model: MlpModel, params: AdamParams = AdamParams()) -> AdamState:
    """Fresh state: step count zero, both moments zero everywhere."""
    return AdamState(
        params=params,
        t=0,
        m_weights=[np.zeros_like(w) for w in model.weights],
        m_biases=[np.zeros_like(b) for b in model.biases],
        v_weights=[np.zeros_like(w) for w in model.weights],
        v_biases=[np.zeros_like(b) for b in model.biases],
    )


def _update(theta, g, m, v, hp: AdamParams, t: int):
    m_new = hp.beta1 * m + (1.0 - hp.beta1) * g
    v_new = hp.beta2 * v + (1.0 - hp.beta2) * g * g
    m_hat = m_new / (1.0 - hp.beta1 ** t)
    v_hat = v_new / (1.0 - hp.beta2 ** t)
    theta_new = theta - hp.learning_rate * m_hat / (np.sqrt(v_hat) + hp.epsilon)
    return theta_new, m_new, v_new


def adam_step(
    state: AdamState, model: MlpModel, grads: Gradients
) -> tuple[MlpModel, AdamState]:
    check_shape_congruent(model, grads)
    hp = state.params
    t = state.t + 1
    new_w, new_b = [], []
    m_w, m_b, v_w, v_b = [], [], [], []
    for layer in range(model.n_layers):
        w, mw, vw = _update(
            model.weights[layer], grads.weights[layer],
            state.m_weights[layer], state.v_weights[layer], hp, t,
        )
        b, mb, vb = _update(
            model.biases[layer], grads.biases[layer],
            state.m_biases[layer], state.v_biases[layer], hp, t,
        )
        new_w.append(w)
        new_b.append(b)
        m_w.append(mw)
        m_b.append(mb)
        v_w.append(vw)
        v_b.append(vb)
    new_model = MlpModel(
        layer_sizes=model.layer_sizes, weights=new_w, biases=new_b,
        seed=model.seed,
    )
    new_state = AdamState(
        params=hp, t=t,
        m_weights=m_w, m_biases=m_b, v_weights=v_w, v_biases=v_b,
    )
    return new_model, new_state


def finite_diff_grad(
    model: MlpModel, batch, labels, h: float = 1e-5
) -> Gradients:
    """Central-difference gradients, one parameter at a time.

    Independent of :func:`~edumlp.network.backward`: it only re-evaluates
    the loss at perturbed parameters. Quadratic cost in parameter count,
    intended for small models in tests.
    """
    if h <= 0:
        raise ValueError("h must be positive")

    def loss_at(m: MlpModel) -> float:
        return loss_sce(forward(m, batch).probabilities, labels)

    grad_w = []
    grad_b = []
    for layer in range(model.n_layers):
        for arrays, grads_out in (
            (model.weights, grad_w),
            (model.biases, grad_b),
        ):
            target = arrays[layer]
            grad = np.zeros_like(target)
            flat = target.reshape(-1)
            grad_flat = grad.reshape(-1)
            for k in range(flat.size):
                original = flat[k]
                flat[k] = original + h
                plus = loss_at(model)
                flat[k] = original - h
                minus = loss_at(model)
                flat[k] = original
                grad_flat[k] = (plus - minus) / (2.0 * h)
            grads_out.append(grad)
    return Gradients(weights=grad_w, biases=grad_b)
