"""Hill Climbing, Hill Climbing Two Steps and Scuba Search.

All three evaluate the neighborhood of every visited point once per loop
iteration, through a :class:`CountingLandscape`, and break ties uniformly at
random with the run generator. Evaluation cost per iteration:

* HC: ``1 + |V|``
* HC2: ``(1 + |V|)**2`` (the point, its neighbors, and evol of each neighbor)
* SS: ``(1 + Degn(s)) * (1 + |V|)``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np
from sklearn.base import BaseEstimator

from ._validation import check_random_state
from .landscape import CountingLandscape, Landscape, profile

CLIMB = "climb"
NEUTRAL = "neutral"
JUMP = "jump"
DESCENT = "descent"


@dataclass(frozen=True)
class TraceRecord:
    kind: str
    fitness_before: int
    fitness_after: int
    evaluations: int
    solution: Any = field(default=None, compare=False, repr=False)


@dataclass
class SearchOutcome:
    solution: Any
    fitness: int
    steps: int = 0
    flat_count: int = 0
    gate_count: int = 0
    evaluations: int = 0
    initial_fitness: int | None = None
    trace: list[TraceRecord] | None = None


def _choose(rng: np.random.Generator, candidates: np.ndarray) -> int:
    return int(candidates[rng.integers(candidates.shape[0])])


def _kind(direction, before, after) -> str:
    if after == before:
        return NEUTRAL
    return CLIMB if direction.better(after, before) else DESCENT


def hill_climb(landscape: Landscape, s0, rng, trace: bool = False) -> SearchOutcome:
    """Best-neighbor climbing with the move-then-test loop shape.

    Each iteration picks uniformly among the points of ``{s} | V(s)`` whose
    fitness equals evol(s), moves there and stops once the new point is a
    local optimum. Staying put counts as an iteration.
    """
    rng = check_random_state(rng)
    land = CountingLandscape(landscape)
    direction = land.direction
    s = land.check_solution(s0)
    records = [] if trace else None
    f, nf, best = profile(land, s)
    f0 = f
    steps = 0
    while True:
        pool = np.flatnonzero(nf == best)
        if f == best:
            pool = np.append(pool, -1)
        k = _choose(rng, pool)
        before = f
        if k >= 0:
            s = land.neighbor(s, k)
        steps += 1
        f, nf, best = profile(land, s)
        if records is not None and k >= 0:
            records.append(TraceRecord(_kind(direction, before, f), before, f, land.evaluations, s))
        if f == best:
            break
    return SearchOutcome(s, f, steps=steps, evaluations=land.evaluations,
                         initial_fitness=f0, trace=records)


def hill_climb_two_steps(landscape: Landscape, s0, rng, trace: bool = False) -> SearchOutcome:
    """Climbing guided by the two-move neighborhood.

    If evol(s) already equals evol2(s), move to a neighbor with that fitness;
    otherwise move to a neighbor whose own evol equals evol2(s). evol2(s) is
    obtained as the best evol over ``{s} | V(s)``, which covers exactly the
    two-move ball. Stops at a point that is optimal within that ball.
    """
    rng = check_random_state(rng)
    land = CountingLandscape(landscape)
    direction = land.direction
    s = land.check_solution(s0)
    records = [] if trace else None
    all_moves = np.arange(land.n_neighbors)
    f0 = None
    steps = 0
    before = None
    moved = False
    while True:
        f, nf, best = profile(land, s)
        nev = land.neighbor_evolutions(s, all_moves)
        best2 = direction.best(np.append(nev, best))
        if f0 is None:
            f0 = f
        elif records is not None and moved:
            records.append(TraceRecord(_kind(direction, before, f), before, f, land.evaluations, s))
        if steps > 0 and f == best2:
            break
        if best == best2:
            pool = np.flatnonzero(nf == best2)
            if f == best2:
                pool = np.append(pool, -1)
        else:
            pool = np.flatnonzero(nev == best2)
        k = _choose(rng, pool)
        before = f
        moved = k >= 0
        if moved:
            s = land.neighbor(s, k)
        steps += 1
    return SearchOutcome(s, f, steps=steps, evaluations=land.evaluations,
                         initial_fitness=f0, trace=records)


def scuba_search(landscape: Landscape, s0, rng, trace: bool = False) -> SearchOutcome:
    """Scuba Search.

    While some neutral neighbor has strictly better evol than ``s``, move to
    one with the best such evol (flat move). Once ``s`` is a local-neutral
    optimum: stop if it is a local optimum, else jump to a strictly fitter
    neighbor with fitness evol(s) (gate move).
    """
    rng = check_random_state(rng)
    land = CountingLandscape(landscape)
    direction = land.direction
    s = land.check_solution(s0)
    records = [] if trace else None
    flat = gate = 0
    f0 = None
    while True:
        f, nf, best = profile(land, s)
        if f0 is None:
            f0 = f
        neutral = np.flatnonzero(nf == f)
        if neutral.size:
            nev = land.neighbor_evolutions(s, neutral)
            top = direction.best(nev)
            if direction.better(top, best):
                s = land.neighbor(s, _choose(rng, neutral[nev == top]))
                flat += 1
                if records is not None:
                    records.append(TraceRecord(NEUTRAL, f, f, land.evaluations, s))
                continue
        if f == best:
            break
        # neutral neighbors have fitness f != best, so this pool excludes them
        s = land.neighbor(s, _choose(rng, np.flatnonzero(nf == best)))
        gate += 1
        if records is not None:
            records.append(TraceRecord(JUMP, f, best, land.evaluations, s))
    return SearchOutcome(s, f, steps=flat + gate, flat_count=flat, gate_count=gate,
                         evaluations=land.evaluations, initial_fitness=f0, trace=records)


HEURISTICS = {
    "hc": hill_climb,
    "hc2": hill_climb_two_steps,
    "ss": scuba_search,
}


class _LocalSearch(BaseEstimator):
    """Estimator wrapper: ``fit(landscape)`` runs one search.

    Parameters
    ----------
    random_state : int, Generator or None
        Seeds the initial solution (when not given) and all tie-breaking.
    record_trace : bool
        Keep one :class:`TraceRecord` per accepted move in ``trace_``.

    Attributes
    ----------
    solution_, fitness_, n_steps_, n_evaluations_, outcome_, trace_
    """

    _search = None

    def __init__(self, random_state=None, record_trace=False):
        self.random_state = random_state
        self.record_trace = record_trace

    def fit(self, landscape: Landscape, initial=None):
        rng = check_random_state(self.random_state)
        if initial is None:
            initial = landscape.random_solution(rng)
        outcome = type(self)._search(landscape, landscape.check_solution(initial), rng,
                                     trace=self.record_trace)
        self.outcome_ = outcome
        self.solution_ = outcome.solution
        self.fitness_ = outcome.fitness
        self.n_steps_ = outcome.steps
        self.n_evaluations_ = outcome.evaluations
        self.trace_ = outcome.trace
        self.landscape_ = landscape
        return self

    def score(self, landscape: Landscape | None = None) -> float:
        """Final fitness in the landscape's reporting units."""
        landscape = landscape if landscape is not None else self.landscape_
        return landscape.normalize(self.fitness_)


class HillClimbing(_LocalSearch):
    _search = staticmethod(hill_climb)


class HillClimbingTwoSteps(_LocalSearch):
    _search = staticmethod(hill_climb_two_steps)


class ScubaSearch(_LocalSearch):
    _search = staticmethod(scuba_search)

    def fit(self, landscape, initial=None):
        super().fit(landscape, initial)
        self.flat_count_ = self.outcome_.flat_count
        self.gate_count_ = self.outcome_.gate_count
        return self
