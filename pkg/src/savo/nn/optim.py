"""Adam and Polyak target tracking over flat lists of parameter arrays."""

from __future__ import annotations

import numpy as np

from .core import ShapeError


class NonFiniteGradientError(ValueError):
    """A gradient contained NaN or Inf; the update was rejected."""


class AdamState:
    """First/second moment accumulators plus a step counter for one network."""

    def __init__(self, arrays: list[np.ndarray]):
        self.m = [np.zeros_like(a) for a in arrays]
        self.v = [np.zeros_like(a) for a in arrays]
        self.step = 0


def adam_step(
    arrays: list[np.ndarray],
    grads: list[np.ndarray],
    state: AdamState,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> None:
    """One in-place Adam update with bias correction.

    Gradients are validated before any state is touched: a non-finite
    gradient raises and leaves parameters, moments and the step counter
    unchanged.
    """
    if len(arrays) != len(grads) or len(arrays) != len(state.m):
        raise ShapeError("parameter/gradient/state lengths disagree")
    for a, g in zip(arrays, grads):
        if a.shape != g.shape:
            raise ShapeError(f"gradient shape {g.shape} != parameter shape {a.shape}")
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradientError("non-finite gradient; update rejected")
    state.step += 1
    c1 = 1.0 - beta1**state.step
    c2 = 1.0 - beta2**state.step
    for a, g, m, v in zip(arrays, grads, state.m, state.v):
        m *= beta1
        m += (1.0 - beta1) * g
        v *= beta2
        v += (1.0 - beta2) * g * g
        a -= lr * (m / c1) / (np.sqrt(v / c2) + eps)


def polyak_update(target: list[np.ndarray], online: list[np.ndarray], tau: float) -> None:
    """target <- (1 - tau) * target + tau * online, in place."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    if len(target) != len(online):
        raise ShapeError("target/online array counts differ")
    for t, o in zip(target, online):
        if t.shape != o.shape:
            raise ShapeError(f"target shape {t.shape} != online shape {o.shape}")
        t *= 1.0 - tau
        t += tau * o
