"""Tabular MDP solvers: value iteration and policy iteration where the
improvement step combines a local hill-climb with an argmax over a set of
proposed alternative actions."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class ConvergenceError(RuntimeError):
    pass


@dataclass
class TabularMDP:
    transition: np.ndarray  # (S, A, S), each row a distribution
    reward: np.ndarray  # (S, A)
    gamma: float

    def __post_init__(self):
        self.transition = np.asarray(self.transition, dtype=np.float64)
        self.reward = np.asarray(self.reward, dtype=np.float64)
        s, a, s2 = self.transition.shape
        if s != s2 or self.reward.shape != (s, a):
            raise ValueError("transition must be (S, A, S) with matching rewards")
        sums = self.transition.sum(axis=2)
        if np.max(np.abs(sums - 1.0)) > 1e-12:
            raise ValueError("transition rows must sum to 1 within 1e-12")
        if not 0.0 <= self.gamma < 1.0:
            raise ValueError("gamma must lie in [0, 1)")

    @property
    def n_states(self) -> int:
        return self.reward.shape[0]

    @property
    def n_actions(self) -> int:
        return self.reward.shape[1]


def random_mdp(
    rng: np.random.Generator, n_states: int = 20, n_actions: int = 10, gamma: float = 0.9
) -> TabularMDP:
    raw = rng.dirichlet(np.ones(n_states), size=(n_states, n_actions))
    # renormalize so the row-sum invariant holds to full precision
    raw = raw / raw.sum(axis=2, keepdims=True)
    reward = rng.uniform(0.0, 1.0, size=(n_states, n_actions))
    return TabularMDP(transition=raw, reward=reward, gamma=gamma)


def value_iteration(mdp: TabularMDP, tol: float = 1e-10, max_iter: int = 1_000_000) -> np.ndarray:
    """Iterates the optimality backup until the Bellman residual is below tol."""
    v = np.zeros(mdp.n_states)
    for _ in range(max_iter):
        q = mdp.reward + mdp.gamma * mdp.transition @ v
        v_next = q.max(axis=1)
        if np.max(np.abs(v_next - v)) < tol:
            return v_next
        v = v_next
    raise ConvergenceError("value iteration did not reach the residual tolerance")


def bellman_residual(mdp: TabularMDP, v: np.ndarray) -> float:
    q = mdp.reward + mdp.gamma * mdp.transition @ v
    return float(np.max(np.abs(q.max(axis=1) - v)))


def policy_evaluation_exact(mdp: TabularMDP, policy: np.ndarray) -> np.ndarray:
    """Solve (I - gamma P_pi) V = R_pi for a deterministic policy."""
    idx = np.arange(mdp.n_states)
    p_pi = mdp.transition[idx, policy]
    r_pi = mdp.reward[idx, policy]
    return np.linalg.solve(np.eye(mdp.n_states) - mdp.gamma * p_pi, r_pi)


def maximizer_policy_iteration(
    mdp: TabularMDP,
    k_proposals: int,
    seed: int = 0,
    full_coverage: bool = False,
):
    """Policy iteration with a hill-climb improvement plus proposal argmax.

    Each iteration evaluates the policy exactly, takes one hill-climb step to
    the best action among the current action's ring neighbors (the local,
    gradient-like move), then picks the argmax over that move plus
    ``k_proposals`` random alternative actions per state (all actions when
    ``full_coverage``). Stops at a policy fixed point; returns the policy,
    its exact value, and the per-iteration value history.
    """
    rng = np.random.default_rng(seed)
    n_s, n_a = mdp.n_states, mdp.n_actions
    policy = np.zeros(n_s, dtype=np.int64)
    history: list[np.ndarray] = []
    max_iters = 10 * n_s * n_a
    for _ in range(max_iters):
        v = policy_evaluation_exact(mdp, policy)
        history.append(v)
        q = mdp.reward + mdp.gamma * mdp.transition @ v
        new_policy = np.empty_like(policy)
        for s in range(n_s):
            ring = [(policy[s] - 1) % n_a, policy[s], (policy[s] + 1) % n_a]
            local = max(ring, key=lambda a: q[s, a])
            if full_coverage:
                candidates = list(range(n_a))
            else:
                candidates = [int(local)] + rng.integers(0, n_a, size=k_proposals).tolist()
            best = candidates[int(np.argmax([q[s, a] for a in candidates]))]
            # keep the incumbent on exact ties so fixed points are stable
            new_policy[s] = policy[s] if q[s, best] <= q[s, policy[s]] else best
        if np.array_equal(new_policy, policy):
            return policy, v, history
        policy = new_policy
    raise ConvergenceError(f"no policy fixed point within {max_iters} iterations")
