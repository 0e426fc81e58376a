"""Row builders for the neutrality grids and heuristic comparisons."""

from __future__ import annotations

from typing import Iterable, Sequence

from .._validation import SAMPLING_STREAM, stream_rng
from ..nkq import LinkKind, mean_neutral_degree
from ..tsp import mean_neutral_proportion
from .experiment import ExperimentSpec, NKqProblem, TSPProblem, run_experiment, summarize

TABLE1_Q = (2, 3, 4, 100)
TABLE1_K = (0, 2, 4, 8, 12, 16)
TABLE2_L = (10, 20, 30, 100)
ALL_HEURISTICS = ("hc", "ss", "hc2")


def _cell_fields(problem) -> dict:
    if isinstance(problem, NKqProblem):
        return {"problem": "nkq", "q": problem.q, "k": problem.k, "l": None}
    return {"problem": "tspn", "q": None, "k": None, "l": problem.side}


def table1_rows(n: int, samples: int, seed: int, qs: Iterable[int] = TABLE1_Q,
                ks: Iterable[int] = TABLE1_K, kind=LinkKind.RANDOM) -> list[dict]:
    """Mean neutral degree for each (q, K) cell, one instance per cell."""
    rows = []
    for q in qs:
        for k in ks:
            land = NKqProblem(n, k, q, LinkKind(kind)).build(seed)
            mean = mean_neutral_degree(land, samples, stream_rng(seed, SAMPLING_STREAM))
            rows.append({"problem": "nkq", "q": q, "k": k, "l": None,
                         "samples": samples, "mean_degree": mean})
    return rows


def fig1_rows(n: int, samples: int, seed: int, sides: Iterable[int]) -> list[dict]:
    """Mean proportion of neutral 2-opt neighbors for each lattice side."""
    rows = []
    for side in sides:
        land = TSPProblem(side, n).build(seed)
        mean = mean_neutral_proportion(land, samples, stream_rng(seed, SAMPLING_STREAM))
        rows.append({"problem": "tspn", "n": n, "l": side, "samples": samples,
                     "mean_proportion": mean})
    return rows


def compare(problems: Sequence, heuristics: Iterable[str], runs: int, seed: int,
            instance_seed: int | None = None, n_jobs: int = 1) -> list[tuple]:
    """Run every heuristic on every problem; ``[(problem, heuristic, stats)]``."""
    instance_seed = seed if instance_seed is None else instance_seed
    results = []
    for problem in problems:
        land = problem.build(instance_seed)
        for h in heuristics:
            spec = ExperimentSpec(problem, h, runs, seed, instance_seed)
            outcomes = run_experiment(spec, n_jobs=n_jobs, landscape=land)
            results.append((problem, h, summarize(spec, outcomes, land)))
    return results


def performance_rows(results) -> list[dict]:
    return [
        {**_cell_fields(p), "heuristic": h, "runs": st.runs, "mean_fitness": st.mean,
         "std_fitness": st.stddev, "best_fitness": st.best_reported,
         "mean_evaluations": st.mean_evaluations}
        for p, h, st in results
    ]


def evaluation_rows(results) -> list[dict]:
    return [
        {**_cell_fields(p), "heuristic": h, "runs": st.runs,
         "mean_evaluations": st.mean_evaluations, "mean_steps": st.mean_steps,
         "mean_flat": st.mean_flat, "mean_gate": st.mean_gate}
        for p, h, st in results
    ]


def nkq_problems(n: int, qs: Iterable[int], ks: Iterable[int], kind=LinkKind.RANDOM) -> list:
    return [NKqProblem(n, k, q, LinkKind(kind)) for q in qs for k in ks]


def tsp_problems(n: int, sides: Iterable[int]) -> list:
    return [TSPProblem(side, n) for side in sides]
