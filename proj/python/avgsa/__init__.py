"""Averaged stochastic-approximation kernel regression estimators and their rate functions."""

import json

from ._core import (
    AvgsaError,
    EstimatorState,
    GridBoundary,
    IoError,
    Kernel,
    Model,
    NonConvergence,
    NumericError,
    ParseError,
    PsiContext,
    RootNotBracketed,
    ScheduleConfig,
    ValidationError,
    bias_constant,
    mdp_asymptotic_variance,
    mdp_rate,
    nadaraya_watson,
    rate_I,
    validate_exponents,
)
from ._core import _run_experiment_json

__all__ = [
    "AvgsaError",
    "EstimatorState",
    "GridBoundary",
    "IoError",
    "Kernel",
    "Model",
    "NonConvergence",
    "NumericError",
    "ParseError",
    "PsiContext",
    "RootNotBracketed",
    "ScheduleConfig",
    "ValidationError",
    "bias_constant",
    "mdp_asymptotic_variance",
    "mdp_rate",
    "nadaraya_watson",
    "rate_I",
    "run_experiment",
    "validate_exponents",
]


def run_experiment(kind, config_text, seed=None, threads=None):
    """Run a bias, variance, tail or mdp experiment described by INI text.

    Returns the summary document (meta, rows, checks, warnings) as a dict.
    """
    return json.loads(_run_experiment_json(kind, config_text, seed, threads))
