"""Permutation-invariant set summaries: per-element MLP, mean pool, output MLP."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Mlp, ShapeError


@dataclass
class SetSummary:
    vector: np.ndarray
    count: int


class DeepSetSummarizer:
    """phi-MLP per element, mean pooling, rho-MLP on the pooled vector.

    phi and rho are both two-layer ReLU MLPs. The empty set summarizes to
    the zero vector by convention.
    """

    def __init__(self, phi: Mlp, rho: Mlp):
        if phi.out_dim != rho.in_dim:
            raise ShapeError("phi output dim must match rho input dim")
        self.phi = phi
        self.rho = rho

    @classmethod
    def create(
        cls, element_dim: int, width: int, summary_dim: int, rng: np.random.Generator
    ) -> "DeepSetSummarizer":
        phi = Mlp.create([element_dim, width, width], ["relu", "relu"], rng)
        rho = Mlp.create([width, summary_dim, summary_dim], ["relu", "relu"], rng)
        return cls(phi, rho)

    @property
    def element_dim(self) -> int:
        return self.phi.in_dim

    @property
    def summary_dim(self) -> int:
        return self.rho.out_dim

    def arrays(self) -> list[np.ndarray]:
        return self.phi.arrays() + self.rho.arrays()

    def summarize(self, elements) -> SetSummary:
        """Summarize one set of equal-length vectors.

        Elements are put in a canonical (lexicographic) order before pooling
        so the output is bitwise identical under input permutation.
        """
        if len(elements) == 0:
            return SetSummary(np.zeros(self.summary_dim), 0)
        mat = np.asarray(elements, dtype=np.float64)
        if mat.ndim != 2 or mat.shape[1] != self.element_dim:
            raise ShapeError(f"elements must be vectors of length {self.element_dim}")
        order = np.lexsort(mat.T[::-1])
        mat = mat[order]
        pooled = self.phi.forward(mat).mean(axis=0)
        return SetSummary(self.rho.forward(pooled), mat.shape[0])

    # --- batched paths used inside the agent (element order is the stored
    # candidate order; only used with a fixed element count per row) ---

    def forward_batch(self, elements: np.ndarray) -> np.ndarray:
        b, m, p = elements.shape
        if m == 0:
            return np.zeros((b, self.summary_dim))
        h = self.phi.forward(elements.reshape(b * m, p))
        pooled = h.reshape(b, m, -1).mean(axis=1)
        return self.rho.forward(pooled)

    def forward_batch_tape(self, elements: np.ndarray):
        b, m, p = elements.shape
        if m == 0:
            return np.zeros((b, self.summary_dim)), (b, m, None, None)
        h, phi_tape = self.phi.forward_tape(elements.reshape(b * m, p))
        pooled = h.reshape(b, m, -1).mean(axis=1)
        out, rho_tape = self.rho.forward_tape(pooled)
        return out, (b, m, phi_tape, rho_tape)

    def backward_batch(self, tape, dout: np.ndarray):
        """Returns (d_elements, grads); grads match :meth:`arrays` order."""
        b, m, phi_tape, rho_tape = tape
        if m == 0:
            return np.zeros((b, 0, self.element_dim)), [np.zeros_like(a) for a in self.arrays()]
        dpooled, rho_grads = self.rho.backward(rho_tape, dout)
        dh = np.repeat(dpooled / m, m, axis=0)
        delems, phi_grads = self.phi.backward(phi_tape, dh)
        return delems.reshape(b, m, self.element_dim), phi_grads + rho_grads


def deepset_summarize(elements, summarizer: DeepSetSummarizer) -> SetSummary:
    return summarizer.summarize(elements)
