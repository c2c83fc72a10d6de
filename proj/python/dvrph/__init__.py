"""Density-scaled Vietoris-Rips persistent homology."""

from ._dvrph import (
    DegenerateInput,
    NumericError,
    alpha,
    bottleneck,
    dataset_names,
    kde,
    persistence,
    sample,
    select_k,
)

__all__ = [
    "DegenerateInput",
    "NumericError",
    "alpha",
    "bottleneck",
    "dataset_names",
    "kde",
    "persistence",
    "sample",
    "select_k",
]
