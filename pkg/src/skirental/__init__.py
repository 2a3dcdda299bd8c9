"""Prediction-augmented ski rental: optimal randomized strategies and guarantees."""

from .errors import BracketError, DomainError, NumericError, SkiRentalError
from .markers import INFINITE, UNBOUNDED, InfiniteSeason, Unbounded
from .solver import (
    GuaranteeReport,
    NO_INFORMATION_ALPHA,
    NO_INFORMATION_CR,
    Prediction,
    cr_interval,
    cross_expected_cr,
    dual_objective,
    guarantee_report,
    optimal_cr,
    optimal_cutoff_z,
    sensitivity_delta,
)
from .strategies import AdversaryPolicy, SkierPolicy
from .simulator import SimulationSummary, TrialConfig, run, run_table1

__all__ = [
    "AdversaryPolicy",
    "BracketError",
    "DomainError",
    "GuaranteeReport",
    "INFINITE",
    "InfiniteSeason",
    "NO_INFORMATION_ALPHA",
    "NO_INFORMATION_CR",
    "NumericError",
    "Prediction",
    "SimulationSummary",
    "SkiRentalError",
    "SkierPolicy",
    "TrialConfig",
    "UNBOUNDED",
    "Unbounded",
    "cr_interval",
    "cross_expected_cr",
    "dual_objective",
    "guarantee_report",
    "optimal_cr",
    "optimal_cutoff_z",
    "run",
    "run_table1",
    "sensitivity_delta",
]

__version__ = "0.1.0"
