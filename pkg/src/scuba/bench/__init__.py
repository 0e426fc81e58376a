"""Experiment orchestration, aggregation and CSV output."""

from .csvio import SCHEMAS, emit_csv, parse_csv
from .experiment import (
    AggregateStats,
    ExperimentSpec,
    NKqProblem,
    TSPProblem,
    aggregate,
    run_experiment,
    summarize,
)
from .._validation import derive_run_seed
