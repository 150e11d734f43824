"""Design and evaluate truncated sequentially planned tests for Bernoulli data."""

from ._core import (
    CalibrationFailed,
    ConfigError,
    DomainError,
    Hypotheses,
    NumericalError,
    Plan,
    binomial_pmf,
    calibrate,
    evaluate,
    np_min_sample_size,
    profile,
)

design = Plan.design

__all__ = [
    "CalibrationFailed",
    "ConfigError",
    "DomainError",
    "Hypotheses",
    "NumericalError",
    "Plan",
    "binomial_pmf",
    "calibrate",
    "design",
    "evaluate",
    "np_min_sample_size",
    "profile",
]
