"""Experiment specs, execution and aggregation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from joblib import Parallel, delayed

from .._validation import check_int, derive_run_seed
from ..landscape import Direction, Landscape
from ..nkq import LinkKind, NKqLandscape, NKqParams
from ..search import HEURISTICS, SearchOutcome
from ..tsp import LatticeTSP

DEFAULT_RUNS = {"nkq": 1000, "tspn": 500}


@dataclass(frozen=True)
class NKqProblem:
    n: int = 64
    k: int = 0
    q: int = 2
    kind: LinkKind = LinkKind.RANDOM

    name = "nkq"

    def build(self, seed: int) -> NKqLandscape:
        return NKqLandscape.generate(NKqParams(self.n, self.k, self.q, self.kind, seed))


@dataclass(frozen=True)
class TSPProblem:
    side: int = 10
    n: int = 64

    name = "tspn"

    def build(self, seed: int) -> LatticeTSP:
        return LatticeTSP.generate(self.side, self.n, seed)


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything that determines an experiment's results.

    All runs share one instance built from ``instance_seed``; run ``i`` uses
    ``derive_run_seed(master_seed, i)`` for its initial solution and ties.
    """

    problem: NKqProblem | TSPProblem
    heuristic: str
    runs: int
    master_seed: int = 0
    instance_seed: int = 0

    def __post_init__(self):
        if self.heuristic not in HEURISTICS:
            raise ValueError(f"unknown heuristic {self.heuristic!r}; choose from {sorted(HEURISTICS)}")
        check_int(self.runs, "runs", minimum=1)
        check_int(self.master_seed, "master_seed")
        check_int(self.instance_seed, "instance_seed")


def _one_run(landscape: Landscape, heuristic: str, master_seed: int, index: int, trace: bool):
    rng = np.random.default_rng(derive_run_seed(master_seed, index))
    s0 = landscape.random_solution(rng)
    return HEURISTICS[heuristic](landscape, s0, rng, trace=trace)


def run_experiment(spec: ExperimentSpec, n_jobs: int = 1, landscape: Landscape | None = None,
                   trace: bool = False) -> list[SearchOutcome]:
    """Run every search of ``spec``; outcomes are returned in run order.

    ``landscape`` overrides the instance built from the spec (e.g. one read
    from an instance file).
    """
    if landscape is None:
        landscape = spec.problem.build(spec.instance_seed)
    if n_jobs == 1:
        return [_one_run(landscape, spec.heuristic, spec.master_seed, i, trace)
                for i in range(spec.runs)]
    return Parallel(n_jobs=n_jobs)(
        delayed(_one_run)(landscape, spec.heuristic, spec.master_seed, i, trace)
        for i in range(spec.runs)
    )


@dataclass(frozen=True)
class AggregateStats:
    """Summary of one experiment.

    ``mean`` and ``stddev`` are in reporting units (``scale`` times raw);
    ``best`` is the raw best fitness.
    """

    mean: float
    stddev: float
    best: int
    mean_evaluations: float
    runs: int
    scale: float = 1.0
    mean_steps: float = 0.0
    mean_flat: float = 0.0
    mean_gate: float = 0.0

    @property
    def best_reported(self) -> float:
        return self.best * self.scale


def aggregate(outcomes: Sequence[SearchOutcome], direction: Direction = Direction.MAXIMIZE,
              scale: float = 1.0) -> AggregateStats:
    """Mean, sample standard deviation (n-1; 0 for one run), and best fitness."""
    if len(outcomes) == 0:
        raise ValueError("cannot aggregate an empty list of outcomes")
    # sorted sums make the floating-point result independent of run order
    values = sorted(int(o.fitness) for o in outcomes)
    n = len(values)
    mean = math.fsum(values) / n
    if n > 1:
        var = math.fsum((v - mean) ** 2 for v in values) / (n - 1)
    else:
        var = 0.0
    return AggregateStats(
        mean=mean * scale,
        stddev=math.sqrt(var) * abs(scale),
        best=direction.best(values),
        mean_evaluations=math.fsum(o.evaluations for o in outcomes) / n,
        runs=n,
        scale=scale,
        mean_steps=math.fsum(o.steps for o in outcomes) / n,
        mean_flat=math.fsum(o.flat_count for o in outcomes) / n,
        mean_gate=math.fsum(o.gate_count for o in outcomes) / n,
    )


def summarize(spec: ExperimentSpec, outcomes: Sequence[SearchOutcome],
              landscape: Landscape | None = None) -> AggregateStats:
    """Aggregate in the problem's reporting units (normalized for NKq)."""
    if landscape is None:
        landscape = spec.problem.build(spec.instance_seed)
    scale = landscape.normalize(1) if isinstance(landscape, NKqLandscape) else 1.0
    return aggregate(outcomes, landscape.direction, scale)
