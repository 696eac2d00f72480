"""Analytic cart-pole balancing with optional hypersphere action restrictions.

The action is a single force command in [-1, 1]. When a restriction is
active, any command outside every valid sphere is executed as the
replacement command (-1, a hard push left), which carves the reachable
force range into disjoint valid islands and makes the value-versus-action
surface multi-peaked.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .base import Env

GRAVITY = 9.8
CART_MASS = 1.0
POLE_MASS = 0.1
POLE_HALF_LENGTH = 0.5
FORCE_SCALE = 10.0
DT = 0.02
THETA_LIMIT = 12.0 * np.pi / 180.0


@dataclass
class RestrictionSpec:
    """Valid-action hyperspheres plus the command executed for invalid actions."""

    centers: np.ndarray  # (M, D)
    radii: np.ndarray  # (M,)
    replacement: np.ndarray  # (D,)

    def __post_init__(self):
        self.centers = np.atleast_2d(np.asarray(self.centers, dtype=np.float64))
        self.radii = np.atleast_1d(np.asarray(self.radii, dtype=np.float64))
        self.replacement = np.atleast_1d(np.asarray(self.replacement, dtype=np.float64))
        if self.centers.shape[0] != self.radii.shape[0]:
            raise ValueError("need one radius per sphere center")
        if self.centers.shape[0] and np.any(self.radii <= 0.0):
            raise ValueError("sphere radii must be positive")


def check_valid(action: np.ndarray, restriction: RestrictionSpec) -> bool:
    """True iff the action lies inside at least one (closed) sphere."""
    if restriction.centers.shape[0] == 0:
        return False
    a = np.atleast_1d(np.asarray(action, dtype=np.float64))
    d = np.linalg.norm(restriction.centers - a, axis=1)
    return bool(np.any(d <= restriction.radii))


def sample_restriction(
    seed: int,
    n_spheres: int = 4,
    radius: float = 0.12,
    recoverable: tuple[float, float] = (0.1, 0.5),
    max_tries: int = 10_000,
) -> RestrictionSpec:
    """Seeded 1-D restriction: disjoint spheres, none covering the idle action 0,
    at least one overlapping the moderate-positive-force band that keeps the
    pole recoverable from upright."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        centers = rng.uniform(-1.0 + radius, 1.0 - radius, size=n_spheres)
        centers.sort()
        if np.any(np.diff(centers) < 2.0 * radius):
            continue  # overlapping spheres collapse into one peak
        if np.any(np.abs(centers) <= radius):
            continue  # keep the idle action invalid so the landscape is non-trivial
        lo, hi = recoverable
        if not np.any((centers + radius >= lo) & (centers - radius <= hi)):
            continue
        return RestrictionSpec(
            centers=centers[:, None], radii=np.full(n_spheres, radius), replacement=np.array([-1.0])
        )
    raise RuntimeError("could not sample a restriction satisfying the constraints")


# frozen output of sample_restriction(seed=7); pinned so experiments can
# reference one canonical restricted task (a single positive-force island at
# +0.58 among three negative decoys, idle action invalid)
CANONICAL_RESTRICTION = RestrictionSpec(
    centers=np.array([
        [-0.87342773398834628],
        [-0.60814849733186582],
        [-0.22961609334011623],
        [0.58088400445107224],
    ]),
    radii=np.full(4, 0.12),
    replacement=np.array([-1.0]),
)


class CartPoleEnv(Env):
    """Semi-implicit Euler cart-pole; +1 reward per step while the pole is upright."""

    observation_dim = 4
    action_dim = 1
    action_low = np.array([-1.0])
    action_high = np.array([1.0])

    _obs_scale = np.array([2.4, 3.0, THETA_LIMIT, 3.0])

    def __init__(self, restriction: RestrictionSpec | None = None, horizon: int = 500, seed: int = 0):
        self.restriction = restriction
        self.horizon = horizon
        self._rng = np.random.default_rng(seed)
        self._state = np.zeros(4)  # x, x_dot, theta, theta_dot
        self._t = 0

    def reset(self, seed: int | None = None) -> np.ndarray:
        if seed is not None:
            self._rng = np.random.default_rng(seed)
        self._state = self._rng.uniform(-0.05, 0.05, size=4)
        self._t = 0
        return self._observe()

    def _observe(self) -> np.ndarray:
        return self._state / self._obs_scale

    def step(self, action):
        a = np.clip(np.atleast_1d(np.asarray(action, dtype=np.float64)), -1.0, 1.0)
        if self.restriction is not None and not check_valid(a, self.restriction):
            a = self.restriction.replacement
        x, x_dot, theta, theta_dot = self._state
        force = FORCE_SCALE * float(a[0])
        cos_t, sin_t = np.cos(theta), np.sin(theta)
        total_mass = CART_MASS + POLE_MASS
        pm_l = POLE_MASS * POLE_HALF_LENGTH
        temp = (force + pm_l * theta_dot**2 * sin_t) / total_mass
        theta_acc = (GRAVITY * sin_t - cos_t * temp) / (
            POLE_HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos_t**2 / total_mass)
        )
        x_acc = temp - pm_l * theta_acc * cos_t / total_mass
        x_dot += DT * x_acc
        x += DT * x_dot
        theta_dot += DT * theta_acc
        theta += DT * theta_dot
        self._state = np.array([x, x_dot, theta, theta_dot])
        self._t += 1
        done = abs(theta) > THETA_LIMIT or self._t >= self.horizon
        return self._observe(), 1.0, done, {"executed": a.copy()}
