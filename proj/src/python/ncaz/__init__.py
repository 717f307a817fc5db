"""Noncommutative martingale concentration bounds and a harness that checks them."""

import json

from ._core import (
    Error,
    __version__,
    bounds,
    cli,
    conditional_expectation,
    conditional_expectation_by_pinching,
    eigenvalues,
    schatten_norm,
    tail_probability,
    trace_state,
)
from ._core import run_report as _run_report


def verify(suites=("all",), trials=1, seed=0, dims=None, lambda_grid=None, p_grid=None, threads=1):
    """Run the verification suites and return the parsed report."""
    text = _run_report(list(suites), trials, seed, dims, lambda_grid, p_grid, threads)
    return json.loads(text)


__all__ = [
    "Error",
    "__version__",
    "bounds",
    "cli",
    "conditional_expectation",
    "conditional_expectation_by_pinching",
    "eigenvalues",
    "schatten_norm",
    "tail_probability",
    "trace_state",
    "verify",
]
