from .core import DenseLayer, Mlp, ShapeError, relu, relu_prime, xavier_uniform
from .deepset import DeepSetSummarizer, SetSummary, deepset_summarize
from .film import FilmGenerator, film_modulate
from .optim import AdamState, NonFiniteGradientError, adam_step, polyak_update
from .checkpoint import load_arrays, save_arrays

__all__ = [
    "AdamState",
    "DeepSetSummarizer",
    "DenseLayer",
    "FilmGenerator",
    "Mlp",
    "NonFiniteGradientError",
    "SetSummary",
    "ShapeError",
    "adam_step",
    "deepset_summarize",
    "film_modulate",
    "load_arrays",
    "polyak_update",
    "relu",
    "relu_prime",
    "save_arrays",
    "xavier_uniform",
]
