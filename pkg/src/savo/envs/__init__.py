from .base import Env, log_episode
from .bandit import BanditEnv, BanditLandscape, canonical_adversarial, random_landscape
from .mining import MiningConfig, MiningEnv, make_tool_map, mining_action_table
from .pendulum import (
    CANONICAL_RESTRICTION,
    CartPoleEnv,
    RestrictionSpec,
    check_valid,
    sample_restriction,
)
from .recsim import RecsimConfig, RecsimEnv, recsim_action_table


def make_env(env_id: str, seed: int = 0, **params) -> Env:
    """Build an environment from a config-style id plus keyword parameters."""
    if env_id == "pendulum":
        restriction = params.pop("restriction", None)
        if restriction == "canonical":
            restriction = CANONICAL_RESTRICTION
        elif isinstance(restriction, dict):
            restriction = RestrictionSpec(**restriction)
        return CartPoleEnv(restriction=restriction, seed=seed, **params)
    if env_id == "mining":
        cfg = MiningConfig(**params) if params else None
        return MiningEnv(config=cfg, seed=seed)
    if env_id == "recsim":
        cfg = RecsimConfig(**params) if params else None
        return RecsimEnv(config=cfg, seed=seed)
    if env_id == "bandit":
        landscape = params.pop("landscape", None)
        if landscape is None or landscape == "canonical":
            landscape = canonical_adversarial()
        elif isinstance(landscape, dict):
            landscape = BanditLandscape(**landscape)
        return BanditEnv(landscape=landscape, seed=seed)
    raise ValueError(f"unknown env id {env_id!r}")


__all__ = [
    "BanditEnv",
    "BanditLandscape",
    "CANONICAL_RESTRICTION",
    "CartPoleEnv",
    "Env",
    "MiningConfig",
    "MiningEnv",
    "RecsimConfig",
    "RecsimEnv",
    "RestrictionSpec",
    "canonical_adversarial",
    "check_valid",
    "log_episode",
    "make_env",
    "make_tool_map",
    "mining_action_table",
    "random_landscape",
    "recsim_action_table",
    "sample_restriction",
]
