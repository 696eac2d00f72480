import json

import numpy as np
import pytest

from savo.envs import (
    CANONICAL_RESTRICTION,
    BanditEnv,
    BanditLandscape,
    CartPoleEnv,
    MiningConfig,
    MiningEnv,
    RecsimConfig,
    RecsimEnv,
    RestrictionSpec,
    canonical_adversarial,
    check_valid,
    log_episode,
    make_env,
    make_tool_map,
    mining_action_table,
    sample_restriction,
)
from savo.envs.mining import BREAK, DOWN, RIGHT


# ------------------------------------------------------------- restriction

def test_check_valid_inside_sphere():
    spec = RestrictionSpec(centers=[[0.5]], radii=[0.1], replacement=[-1.0])
    assert check_valid(np.array([0.55]), spec)
    assert not check_valid(np.array([0.3]), spec)


def test_check_valid_at_center_and_boundary():
    spec = RestrictionSpec(centers=[[0.2, -0.1]], radii=[0.3], replacement=[-1.0, -1.0])
    assert check_valid(np.array([0.2, -0.1]), spec)
    assert check_valid(np.array([0.5, -0.1]), spec)  # distance exactly r: closed ball


def test_check_valid_empty_sphere_list():
    spec = RestrictionSpec(centers=np.zeros((0, 1)), radii=np.zeros(0), replacement=[-1.0])
    assert not check_valid(np.array([0.0]), spec)


def test_restriction_rejects_nonpositive_radius():
    with pytest.raises(ValueError):
        RestrictionSpec(centers=[[0.0]], radii=[0.0], replacement=[-1.0])


def test_canonical_restriction_matches_generator():
    generated = sample_restriction(seed=7)
    assert np.allclose(generated.centers, CANONICAL_RESTRICTION.centers, atol=1e-16)
    assert np.array_equal(generated.radii, CANONICAL_RESTRICTION.radii)


# ----------------------------------------------------------------- cartpole

def test_cartpole_equilibrium_holds_with_zero_force():
    env = CartPoleEnv(seed=0)
    env.reset(seed=0)
    env._state = np.zeros(4)
    obs, reward, done, _ = env.step(np.array([0.0]))
    assert reward == 1.0
    assert not done
    assert np.allclose(obs, 0.0)


def test_cartpole_invalid_action_executes_replacement():
    spec = RestrictionSpec(centers=[[0.5]], radii=[0.1], replacement=[-1.0])
    restricted = CartPoleEnv(restriction=spec, seed=3)
    plain = CartPoleEnv(seed=3)
    s0 = restricted.reset(seed=11)
    assert np.array_equal(plain.reset(seed=11), s0)
    obs_a, *_ , info_a = restricted.step(np.array([0.3]))  # invalid
    obs_b, *_ , _ = plain.step(np.array([-1.0]))
    assert np.array_equal(obs_a, obs_b)
    assert np.array_equal(info_a["executed"], np.array([-1.0]))


def test_cartpole_all_covering_sphere_is_transparent():
    cover = RestrictionSpec(centers=[[0.0]], radii=[2.0], replacement=[-1.0])
    restricted = CartPoleEnv(restriction=cover, seed=5)
    plain = CartPoleEnv(seed=5)
    obs_r = restricted.reset(seed=21)
    obs_p = plain.reset(seed=21)
    assert np.array_equal(obs_r, obs_p)
    rng = np.random.default_rng(2)
    for _ in range(200):
        a = rng.uniform(-1, 1, size=1)
        step_r = restricted.step(a)
        step_p = plain.step(a)
        assert np.array_equal(step_r[0], step_p[0])
        assert step_r[1:3] == step_p[1:3]
        if step_r[2]:
            restricted.reset(seed=33)
            plain.reset(seed=33)


def test_cartpole_reset_seed_reproduces_episode():
    env = CartPoleEnv(seed=0)
    rng = np.random.default_rng(9)
    actions = rng.uniform(-1, 1, size=(50, 1))
    env.reset(seed=4)
    first = [env.step(a) for a in actions]
    env.reset(seed=4)
    second = [env.step(a) for a in actions]
    for (o1, r1, d1, _), (o2, r2, d2, _) in zip(first, second):
        assert np.array_equal(o1, o2)
        assert (r1, d1) == (r2, d2)


def test_cartpole_terminates_on_angle_and_horizon():
    env = CartPoleEnv(horizon=20, seed=0)
    env.reset(seed=0)
    done = False
    steps = 0
    while not done:
        _, _, done, _ = env.step(np.array([1.0]))  # constant push tips the pole
        steps += 1
    assert steps < 20

    env.reset(seed=0)
    for t in range(20):
        env._state[2] = 0.0  # hold the pole upright; only the horizon can end it
        _, _, done, _ = env.step(np.array([0.0]))
    assert done


# ------------------------------------------------------------------- mining

def small_mining(seed=0, **overrides):
    cfg = MiningConfig(**overrides) if overrides else MiningConfig()
    return MiningEnv(config=cfg, seed=seed)


def test_mining_goal_reward_at_step_50():
    env = small_mining()
    env.reset(seed=0)
    gx, gy = env.goal
    env._grid[gx - 1, gy] = -1  # clear the approach cell
    env._pos = (gx - 1, gy)
    env._dir = RIGHT
    env._t = 49
    _, reward, done, info = env.step(RIGHT)
    assert done and info["reached"]
    # goal term 10 * (1 - 0.9 * 50/100) = 5.5 plus the one-cell distance gain
    assert reward == pytest.approx(5.5 + 0.1)


def test_mining_step_reward_for_moving_closer():
    env = small_mining()
    env.reset(seed=1)
    env._grid[2, 1] = -1
    env._pos = (1, 1)
    _, reward, _, _ = env.step(RIGHT)
    assert reward == pytest.approx(0.1)


def test_mining_wrong_tool_is_inert():
    env = small_mining()
    env.reset(seed=2)
    env._pos = (1, 1)
    env._dir = RIGHT
    env._grid[2, 1] = 5
    wrong = next(t for t, (m, _) in enumerate(env.config.tool_map) if m != 5)
    _, reward, _, _ = env.step(4 + wrong)
    assert reward == 0.0
    assert env._grid[2, 1] == 5


def test_mining_correct_tool_breaks_or_transforms():
    env = small_mining()
    env.reset(seed=3)
    env._pos = (1, 1)
    env._dir = RIGHT
    breaker = next(t for t, (m, o) in enumerate(env.config.tool_map) if o == BREAK)
    mine_type = env.config.tool_map[breaker][0]
    env._grid[2, 1] = mine_type
    _, reward, _, _ = env.step(4 + breaker)
    assert reward == pytest.approx(0.1 + 0.1)  # tool + bonus
    assert env._grid[2, 1] == -1

    transformer = next((t for t, (m, o) in enumerate(env.config.tool_map) if o != BREAK), None)
    if transformer is not None:
        mine_type, target = env.config.tool_map[transformer]
        env._grid[2, 1] = mine_type
        _, reward, _, _ = env.step(4 + transformer)
        assert reward == pytest.approx(0.1)
        assert env._grid[2, 1] == target


def test_mining_cannot_step_into_mine_but_turns():
    env = small_mining()
    env.reset(seed=4)
    env._pos = (1, 1)
    env._dir = RIGHT
    env._grid[1, 2] = 7  # mine below
    _, _, _, _ = env.step(DOWN)
    assert env._pos == (1, 1)
    assert env._dir == DOWN


def test_mining_observation_in_unit_interval():
    env = small_mining()
    rng = np.random.default_rng(8)
    obs = env.reset(seed=8)
    assert obs.shape == (8 + env.config.n_mine_types,)
    for _ in range(300):
        assert np.all(obs >= 0.0) and np.all(obs <= 1.0)
        obs, _, done, _ = env.step(int(rng.integers(0, env.config.n_actions)))
        if done:
            obs = env.reset()


def test_mining_direct_path_beats_wasted_moves():
    def run(actions, seed):
        env = small_mining(n_mines=0)
        env.reset(seed=seed)
        total = 0.0
        for a in actions:
            _, r, done, _ = env.step(a)
            total += r
            if done:
                break
        return total

    direct = [RIGHT] * 7 + [DOWN] * 7
    detour = [RIGHT, *([RIGHT, RIGHT + 2] * 1), RIGHT] + [RIGHT] * 5 + [DOWN] * 7
    assert run(direct, seed=5) > run(detour, seed=5)


def test_mining_invalid_action_raises():
    env = small_mining()
    env.reset(seed=0)
    with pytest.raises(ValueError):
        env.step(env.config.n_actions)


def test_mining_reset_seed_reproduces_layout():
    env = small_mining()
    a = env.reset(seed=12)
    grid_a = env._grid.copy()
    b = env.reset(seed=12)
    assert np.array_equal(a, b)
    assert np.array_equal(grid_a, env._grid)


def test_tool_map_is_function_with_terminating_chains():
    mapping = make_tool_map(seed=0, n_types=50)
    assert len(mapping) == 50
    for _, (mine_type, outcome) in enumerate(mapping):
        assert 0 <= mine_type < 50
        if outcome != BREAK:
            assert mapping[outcome][1] == BREAK  # one transmutation away from breakable


def test_mining_action_table_shape_and_bounds():
    table = mining_action_table(MiningConfig())
    assert len(table) == 54
    assert table.dim == 4
    assert np.all(table.reps >= 0.0) and np.all(table.reps <= 1.0)
    assert list(table.categories[:4]) == [0, 0, 0, 0]
    assert all(c == 1 for c in table.categories[4:])


# ------------------------------------------------------------------- recsim

def test_recsim_equal_scores_give_half_click_probability():
    env = RecsimEnv(RecsimConfig(n_items=20, n_categories=4), seed=0)
    env.reset(seed=0)
    env._user = np.zeros(4)  # every score is 0 = skip score
    assert env.click_probability(3) == pytest.approx(0.5)


def test_recsim_unit_score_click_probability():
    env = RecsimEnv(RecsimConfig(n_items=20, n_categories=4), seed=0)
    env.reset(seed=0)
    env._user = env.action_table.reps[7].copy()  # score exactly 1
    assert env.click_probability(7) == pytest.approx(np.e / (1.0 + np.e))


def test_recsim_full_affinity_update_is_toward_with_probability_one():
    env = RecsimEnv(RecsimConfig(n_items=10, n_categories=3), seed=0)
    env.reset(seed=0)
    env._user = env.action_table.reps[2].copy()
    # affinity 1: toward-probability (1+1)/2 = 1 and the step itself vanishes
    for _ in range(5):
        env.step(2)
        assert np.allclose(env._user, env.action_table.reps[2], atol=1e-12)


def test_recsim_update_direction_frequency_matches_rule():
    env = RecsimEnv(RecsimConfig(n_items=50, n_categories=6), seed=0)
    env.reset(seed=0)
    base_user = env._user.copy()
    item = 11
    affinity = float(base_user @ env.action_table.reps[item])
    p_toward = (affinity + 1.0) / 2.0
    toward = 0
    clicks = 0
    for _ in range(20_000):
        env._user = base_user.copy()
        env._t = 0
        _, r, _, info = env.step(item)
        if info["clicked"]:
            clicks += 1
            delta = env.config.user_step * (env.action_table.reps[item] - base_user)
            if np.allclose(env._user, base_user + delta) or np.linalg.norm(env._user) <= 1.0 and np.dot(env._user - base_user, delta) > 0:
                toward += 1
    sigma = np.sqrt(p_toward * (1 - p_toward) / clicks)
    assert abs(toward / clicks - p_toward) < 3 * sigma + 1e-9


def test_recsim_click_rate_matches_probability():
    env = RecsimEnv(RecsimConfig(n_items=30, n_categories=5), seed=0)
    env.reset(seed=0)
    fixed_user = env._user.copy()
    p = env.click_probability(4)
    clicks = 0
    n = 100_000
    for _ in range(n):
        env._user = fixed_user.copy()
        env._t = 0
        _, r, _, _ = env.step(4)
        clicks += int(r)
    sigma = np.sqrt(p * (1 - p) / n)
    assert abs(clicks / n - p) < 3 * sigma


def test_recsim_horizon_and_bad_id():
    env = RecsimEnv(RecsimConfig(n_items=10, n_categories=3, horizon=20), seed=0)
    env.reset(seed=1)
    with pytest.raises(ValueError):
        env.step(10)
    done = False
    steps = 0
    while not done:
        _, _, done, _ = env.step(0)
        steps += 1
    assert steps == 20


def test_recsim_reset_seed_reproduces_episode():
    env = RecsimEnv(RecsimConfig(n_items=25, n_categories=4), seed=0)
    env.reset(seed=3)
    first = [env.step(i % 25) for i in range(20)]
    env.reset(seed=3)
    second = [env.step(i % 25) for i in range(20)]
    for (o1, r1, d1, _), (o2, r2, d2, _) in zip(first, second):
        assert np.array_equal(o1, o2) and (r1, d1) == (r2, d2)


# ------------------------------------------------------------------- bandit

def test_bandit_single_bump_argmax_at_center():
    grid_landscape = BanditLandscape(
        low=[-1.0], high=[1.0], centers=[[0.4]], heights=[1.0], widths=[0.2]
    )
    assert abs(float(grid_landscape.argmax[0]) - 0.4) < 1e-3


def test_bandit_two_bumps_global_max_at_taller():
    landscape = canonical_adversarial()
    assert abs(float(landscape.argmax[0]) - 0.65) < 2e-2
    assert landscape.max_value == pytest.approx(
        landscape.value_at(landscape.argmax), abs=1e-12
    )


def test_bandit_stored_max_matches_grid_bruteforce():
    rng = np.random.default_rng(17)
    for _ in range(10):
        from savo.envs import random_landscape

        landscape = random_landscape(rng)
        grid = np.linspace(-1.0, 1.0, 10_000)[:, None]
        brute = float(np.max(landscape.value(grid)))
        assert abs(brute - landscape.max_value) < 1e-4


def test_bandit_env_clamps_and_terminates():
    env = BanditEnv(seed=0)
    env.reset(seed=0)
    _, r_out, done, _ = env.step(np.array([5.0]))
    env.reset()
    _, r_edge, _, _ = env.step(np.array([1.0]))
    assert done
    assert r_out == pytest.approx(r_edge)


def test_bandit_gradient_matches_finite_differences():
    landscape = canonical_adversarial()
    rng = np.random.default_rng(3)
    for _ in range(20):
        a = rng.uniform(-0.95, 0.95, size=1)
        h = 1e-6
        fd = (landscape.value_at(a + h) - landscape.value_at(a - h)) / (2 * h)
        assert abs(float(landscape.gradient(a)[0]) - fd) < 1e-6


# ----------------------------------------------------------------- plumbing

def test_make_env_ids():
    assert isinstance(make_env("pendulum", seed=0), CartPoleEnv)
    assert isinstance(make_env("mining", seed=0), MiningEnv)
    assert isinstance(make_env("recsim", seed=0, n_items=10, n_categories=3), RecsimEnv)
    assert isinstance(make_env("bandit", seed=0), BanditEnv)
    env = make_env("pendulum", seed=0, restriction="canonical")
    assert env.restriction is CANONICAL_RESTRICTION
    with pytest.raises(ValueError):
        make_env("nope")


def test_log_episode_writes_jsonl(tmp_path):
    env = CartPoleEnv(horizon=5, seed=0)
    path = tmp_path / "episode.jsonl"
    total = log_episode(env, lambda obs: np.array([0.0]), path, seed=2)
    rows = [json.loads(line) for line in path.read_text().splitlines()]
    assert len(rows) >= 1
    assert rows[-1]["done"] is True
    assert {"t", "obs", "action", "reward", "done"} <= set(rows[0])
    assert total == sum(r["reward"] for r in rows)
