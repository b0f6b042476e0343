"""Kingman coalescent on graphs, with exact small-n laws and verification suites."""

from ._core import (
    CapacityError,
    InvalidEdgeError,
    InvalidMergeError,
    ParameterError,
    ValidationError,
    exact_c_distribution,
    exact_cnp_distribution,
    exact_mean_c,
    fast_walk,
    increasing_forest_count,
    labeled_forest_count,
    phi,
    run_erp,
    run_kingman,
    run_suite,
    sample_gnp,
    sample_urrf,
    simulate,
    suite_names,
)

__all__ = [
    "CapacityError",
    "InvalidEdgeError",
    "InvalidMergeError",
    "ParameterError",
    "ValidationError",
    "exact_c_distribution",
    "exact_cnp_distribution",
    "exact_mean_c",
    "fast_walk",
    "increasing_forest_count",
    "labeled_forest_count",
    "phi",
    "run_erp",
    "run_kingman",
    "run_suite",
    "sample_gnp",
    "sample_urrf",
    "simulate",
    "suite_names",
]
