"""Bit-exact parameter checkpoints (npz: arrays + Adam moments + step)."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import ShapeError
from .optim import AdamState

FORMAT_VERSION = 1


def save_arrays(path, arrays: list[np.ndarray], adam: AdamState | None = None) -> None:
    payload = {"version": np.int64(FORMAT_VERSION), "count": np.int64(len(arrays))}
    for i, a in enumerate(arrays):
        payload[f"p{i}"] = a
    if adam is not None:
        payload["step"] = np.int64(adam.step)
        for i, (m, v) in enumerate(zip(adam.m, adam.v)):
            payload[f"m{i}"] = m
            payload[f"v{i}"] = v
    np.savez(path, **payload)


def load_arrays(path, arrays: list[np.ndarray], adam: AdamState | None = None) -> None:
    """Load a checkpoint into existing arrays/state, in place."""
    path = Path(path)
    with np.load(path) as data:
        if int(data["version"]) != FORMAT_VERSION:
            raise ShapeError(f"unsupported checkpoint version in {path}")
        if int(data["count"]) != len(arrays):
            raise ShapeError(f"checkpoint {path} holds {int(data['count'])} arrays, expected {len(arrays)}")
        for i, a in enumerate(arrays):
            stored = data[f"p{i}"]
            if stored.shape != a.shape:
                raise ShapeError(f"array {i} shape {stored.shape} != expected {a.shape}")
            a[:] = stored
        if adam is not None:
            if "step" not in data:
                raise ShapeError(f"checkpoint {path} has no optimizer state")
            adam.step = int(data["step"])
            for i in range(len(arrays)):
                adam.m[i][:] = data[f"m{i}"]
                adam.v[i][:] = data[f"v{i}"]
