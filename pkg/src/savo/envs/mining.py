"""Gridworld mining expedition: navigate to the goal, clearing mines with the
one tool type that applies to each mine type.

Actions 0..3 turn and try to move (right, down, left, up); actions 4..4+T-1
apply tool t to the cell in front. Each tool matches exactly one mine type and
either breaks it or transmutes it into a type whose own tool breaks it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..actions import ActionTable
from .base import Env

RIGHT, DOWN, LEFT, UP = 0, 1, 2, 3
_DELTAS = {RIGHT: (1, 0), DOWN: (0, 1), LEFT: (-1, 0), UP: (0, -1)}
BREAK = -1

_EMPTY = -1
_WALL = -2


def make_tool_map(seed: int, n_types: int, break_fraction: float = 0.7) -> list[tuple[int, int]]:
    """tool t -> (applicable mine type, outcome); outcome is BREAK or a target type
    whose tool breaks, so every clearing chain has length at most two."""
    rng = np.random.default_rng(seed)
    n_break = max(1, int(round(break_fraction * n_types)))
    breakers = set(rng.choice(n_types, size=n_break, replace=False).tolist())
    mapping = []
    break_list = sorted(breakers)
    for t in range(n_types):
        if t in breakers:
            mapping.append((t, BREAK))
        else:
            mapping.append((t, int(break_list[rng.integers(0, len(break_list))])))
    return mapping


@dataclass
class MiningConfig:
    grid_size: int = 10
    n_mine_types: int = 50
    n_tools: int = 50
    r_goal: float = 10.0
    r_step: float = 0.1
    r_tool: float = 0.1
    r_bonus: float = 0.1
    lambda_goal: float = 0.9
    n_max: int = 100
    n_mines: int = 8
    tool_map: list[tuple[int, int]] = field(default_factory=list)
    tool_map_seed: int = 0

    def __post_init__(self):
        if not self.tool_map:
            self.tool_map = make_tool_map(self.tool_map_seed, self.n_mine_types)
        if len(self.tool_map) != self.n_tools:
            raise ValueError("need one mapping entry per tool")
        for mine_type, outcome in self.tool_map:
            if not 0 <= mine_type < self.n_mine_types:
                raise ValueError("tool applies to an unknown mine type")
            if outcome != BREAK and not 0 <= outcome < self.n_mine_types:
                raise ValueError("tool outcome must be BREAK or a mine type")
        for name in ("r_goal", "r_step", "r_tool", "r_bonus", "lambda_goal"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be nonnegative")

    @property
    def n_actions(self) -> int:
        return 4 + self.n_tools


def mining_action_table(config: MiningConfig) -> ActionTable:
    """4-D representations in [0, 1]: skill kind, move direction, applicable
    mine type, application outcome."""
    k = config.n_mine_types
    rows = []
    for d in range(4):
        rows.append([0.0, d / 3.0, 0.0, 0.0])
    for _, (mine_type, outcome) in enumerate(config.tool_map):
        out = 1.0 if outcome == BREAK else outcome / k
        rows.append([1.0, 0.0, mine_type / (k - 1), out])
    cats = np.array([0] * 4 + [1] * config.n_tools)
    return ActionTable(reps=np.asarray(rows), categories=cats)


class MiningEnv(Env):
    discrete = True

    def __init__(self, config: MiningConfig | None = None, seed: int = 0):
        self.config = config or MiningConfig()
        g = self.config.grid_size
        self.start = (1, 1)
        self.goal = (g - 2, g - 2)
        self.horizon = self.config.n_max
        self.observation_dim = 8 + self.config.n_mine_types
        self.action_table = mining_action_table(self.config)
        self._rng = np.random.default_rng(seed)
        self._grid = np.full((g, g), _EMPTY, dtype=np.int64)
        self._pos = self.start
        self._dir = RIGHT
        self._t = 0

    # --- layout -----------------------------------------------------------

    def _new_layout(self):
        g = self.config.grid_size
        grid = np.full((g, g), _EMPTY, dtype=np.int64)
        grid[0, :] = grid[-1, :] = grid[:, 0] = grid[:, -1] = _WALL
        free = [
            (x, y)
            for x in range(1, g - 1)
            for y in range(1, g - 1)
            if (x, y) not in (self.start, self.goal)
        ]
        picks = self._rng.choice(len(free), size=min(self.config.n_mines, len(free)), replace=False)
        for idx in picks:
            x, y = free[int(idx)]
            grid[x, y] = int(self._rng.integers(0, self.config.n_mine_types))
        return grid

    def reset(self, seed: int | None = None) -> np.ndarray:
        if seed is not None:
            self._rng = np.random.default_rng(seed)
        self._grid = self._new_layout()
        self._pos = self.start
        self._dir = RIGHT
        self._t = 0
        return self._observe()

    # --- observation ------------------------------------------------------

    def _cell(self, x: int, y: int) -> int:
        return int(self._grid[x, y])

    def _observe(self) -> np.ndarray:
        k = self.config.n_mine_types
        g = self.config.grid_size
        obs = np.zeros(8 + k)
        x, y = self._pos
        obs[0] = x / (g - 1)
        obs[1] = y / (g - 1)
        obs[2] = self._dir / 3.0
        for i, d in enumerate((RIGHT, DOWN, LEFT, UP)):
            dx, dy = _DELTAS[d]
            cell = self._cell(x + dx, y + dy)
            walkable = cell == _EMPTY or (x + dx, y + dy) == self.goal
            obs[3 + i] = 1.0 if walkable else 0.0
        fx, fy = x + _DELTAS[self._dir][0], y + _DELTAS[self._dir][1]
        front = self._cell(fx, fy)
        if front >= 0:
            obs[7 + front] = 1.0
        elif (fx, fy) == self.goal:
            obs[7 + k] = 1.0
        return obs

    def _distance(self) -> int:
        return abs(self._pos[0] - self.goal[0]) + abs(self._pos[1] - self.goal[1])

    # --- dynamics ---------------------------------------------------------

    def step(self, action_id: int):
        action_id = int(action_id)
        if not 0 <= action_id < self.config.n_actions:
            raise ValueError(f"action id {action_id} out of range")
        self._t += 1
        dist_before = self._distance()
        reward = 0.0
        reached = False
        if action_id < 4:
            self._dir = action_id
            dx, dy = _DELTAS[action_id]
            nx, ny = self._pos[0] + dx, self._pos[1] + dy
            target = self._cell(nx, ny)
            if target == _EMPTY or (nx, ny) == self.goal:
                self._pos = (nx, ny)
                reached = self._pos == self.goal
        else:
            tool = action_id - 4
            mine_type, outcome = self.config.tool_map[tool]
            fx = self._pos[0] + _DELTAS[self._dir][0]
            fy = self._pos[1] + _DELTAS[self._dir][1]
            if self._cell(fx, fy) == mine_type:
                reward += self.config.r_tool
                if outcome == BREAK:
                    self._grid[fx, fy] = _EMPTY
                    reward += self.config.r_bonus
                else:
                    self._grid[fx, fy] = outcome
        reward += self.config.r_step * (dist_before - self._distance())
        if reached:
            reward += self.config.r_goal * (
                1.0 - self.config.lambda_goal * self._t / self.config.n_max
            )
        done = reached or self._t >= self.horizon
        return self._observe(), reward, done, {"reached": reached}
