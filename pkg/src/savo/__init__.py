"""Off-policy actor-critic with successive surrogate pruning for non-convex Q-landscapes."""

__version__ = "0.1.0"
