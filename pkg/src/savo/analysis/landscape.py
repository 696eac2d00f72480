"""Grid-based value-landscape diagnostics.

Local maxima are counted with plateau semantics: a maximal connected region
of equal value is one optimum iff every cell just outside it is strictly
lower. This makes thresholded surfaces (flat regions created by flooring a
landscape at a constant) countable in the obvious way, and a constant grid
counts as a single optimum.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


@dataclass
class LandscapeGrid:
    """Dense (action, value) samples over a 1-D or 2-D box."""

    axes: list[np.ndarray]
    values: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        self.axes = [np.asarray(a, dtype=np.float64) for a in self.axes]
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.ndim not in (1, 2):
            raise ValueError("only 1-D and 2-D grids are supported")
        if any(len(a) < 3 for a in self.axes):
            raise ValueError("need at least 3 points per axis")
        expected = tuple(len(a) for a in self.axes)
        if self.values.shape != expected:
            raise ValueError(f"values shape {self.values.shape} != axes shape {expected}")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("grid values must be finite")

    @property
    def actions(self) -> np.ndarray:
        """Grid coordinates flattened to (n_cells, D)."""
        if self.values.ndim == 1:
            return self.axes[0][:, None]
        mx, my = np.meshgrid(self.axes[0], self.axes[1], indexing="ij")
        return np.stack([mx.ravel(), my.ravel()], axis=1)


def _count_1d(values: np.ndarray) -> int:
    keep = np.ones(len(values), dtype=bool)
    keep[1:] = values[1:] != values[:-1]
    runs = values[keep]
    if len(runs) == 1:
        return 1
    higher_than_left = np.empty(len(runs), dtype=bool)
    higher_than_left[0] = True
    higher_than_left[1:] = runs[1:] > runs[:-1]
    higher_than_right = np.empty(len(runs), dtype=bool)
    higher_than_right[-1] = True
    higher_than_right[:-1] = runs[:-1] > runs[1:]
    return int(np.sum(higher_than_left & higher_than_right))


def _count_2d(values: np.ndarray) -> int:
    n, m = values.shape
    visited = np.zeros((n, m), dtype=bool)
    count = 0
    for sx in range(n):
        for sy in range(m):
            if visited[sx, sy]:
                continue
            v = values[sx, sy]
            stack = [(sx, sy)]
            visited[sx, sy] = True
            is_max = True
            while stack:
                x, y = stack.pop()
                for nx, ny in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
                    if not (0 <= nx < n and 0 <= ny < m):
                        continue
                    w = values[nx, ny]
                    if w == v:
                        if not visited[nx, ny]:
                            visited[nx, ny] = True
                            stack.append((nx, ny))
                    elif w > v:
                        is_max = False
            if is_max:
                count += 1
    return count


def count_local_optima(grid) -> int:
    """Number of (plateau-aware) strict local maxima of a 1-D or 2-D grid."""
    values = grid.values if isinstance(grid, LandscapeGrid) else np.asarray(grid, dtype=np.float64)
    if values.ndim == 1:
        return _count_1d(values)
    if values.ndim == 2:
        return _count_2d(values)
    raise ValueError("only 1-D and 2-D grids are supported")


def surrogate_values(q_values: np.ndarray, anchor_q: np.ndarray) -> list[np.ndarray]:
    """Exact surrogate chain on a grid: level i floors Q at the best of the
    first i anchor Q-values. Returns [Q, floor_1, ..., floor_k]."""
    out = [np.asarray(q_values, dtype=np.float64)]
    anchor_q = np.atleast_1d(np.asarray(anchor_q, dtype=np.float64))
    tau = -np.inf
    for i in range(anchor_q.shape[0]):
        tau = max(tau, float(anchor_q[i]))
        out.append(np.maximum(out[0], tau))
    return out


def surrogate_optima_profile(q_values: np.ndarray, anchor_q: np.ndarray) -> list[int]:
    """[N_opt(Q), N_opt(floor_1), ..., N_opt(floor_k)] for an anchor chain."""
    return [count_local_optima(v) for v in surrogate_values(q_values, anchor_q)]


def suboptimality_gap(grid_values: np.ndarray, q_at_action: float) -> float:
    """Grid-max value minus the value at the actor's action (raw, unclamped)."""
    return float(np.max(grid_values) - q_at_action)


def export_landscape(
    path,
    actions: np.ndarray,
    q_values: np.ndarray,
    exact_surrogates: list[np.ndarray] = (),
    learned_surrogates: list[np.ndarray] = (),
) -> None:
    """CSV dump: action coords, q, then exact and learned surrogate columns."""
    actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
    if actions.shape[0] == 1 and actions.shape[1] > 2:
        actions = actions.T
    dim = actions.shape[1]
    header = [f"a{i}" for i in range(dim)] + ["q"]
    header += [f"psi_{i + 1}" for i in range(len(exact_surrogates))]
    header += [f"psi_hat_{i + 1}" for i in range(len(learned_surrogates))]
    columns = [actions[:, i] for i in range(dim)] + [np.asarray(q_values)]
    columns += [np.asarray(c) for c in exact_surrogates]
    columns += [np.asarray(c) for c in learned_surrogates]
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([f"{v:.17g}" for v in row])


def load_landscape_csv(path) -> tuple[list[str], np.ndarray]:
    with Path(path).open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    return header, np.asarray(rows)
