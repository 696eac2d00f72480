"""Feature-wise affine modulation of a layer's activations by a conditioning vector."""

from __future__ import annotations

import numpy as np

from .core import Mlp, ShapeError


class FilmGenerator:
    """Produces per-feature scale/shift from a conditioning vector.

    The generator is a one-hidden-layer MLP (hidden width equals the
    modulated width) emitting ``2 * width`` values, split into a raw scale
    and a shift. The scale is parameterized as ``1 + raw`` and the output
    layer is zero-initialized, so a fresh generator is exactly the identity
    modulation.
    """

    def __init__(self, net: Mlp, width: int):
        if net.out_dim != 2 * width:
            raise ShapeError("generator must emit 2 * width outputs")
        self.net = net
        self.width = width

    @classmethod
    def create(cls, cond_dim: int, width: int, rng: np.random.Generator) -> "FilmGenerator":
        net = Mlp.create([cond_dim, width, 2 * width], ["relu", "linear"], rng)
        net.layers[-1].weight[:] = 0.0
        net.layers[-1].bias[:] = 0.0
        return cls(net, width)

    def arrays(self) -> list[np.ndarray]:
        return self.net.arrays()

    def scale_shift(self, cond: np.ndarray):
        raw = self.net.forward(cond)
        gamma = 1.0 + raw[..., : self.width]
        beta = raw[..., self.width :]
        return gamma, beta

    def modulate_tape(self, features: np.ndarray, cond: np.ndarray):
        raw, net_tape = self.net.forward_tape(cond)
        gamma = 1.0 + raw[..., : self.width]
        beta = raw[..., self.width :]
        out = gamma * features + beta
        return out, (features, gamma, net_tape)

    def backward(self, tape, dout: np.ndarray, with_params: bool = True):
        """Returns (d_features, d_cond, grads)."""
        features, gamma, net_tape = tape
        dfeat = dout * gamma
        draw = np.concatenate([dout * features, dout], axis=-1)
        dcond, grads = self.net.backward(net_tape, draw, with_params=with_params)
        return dfeat, dcond, grads


def film_modulate(features: np.ndarray, cond: np.ndarray, generator: FilmGenerator) -> np.ndarray:
    """Apply ``scale * features + shift`` with (scale, shift) generated from ``cond``."""
    features = np.asarray(features, dtype=np.float64)
    if features.shape[-1] != generator.width:
        raise ShapeError(
            f"features have width {features.shape[-1]}, generator modulates {generator.width}"
        )
    gamma, beta = generator.scale_shift(cond)
    return gamma * features + beta
