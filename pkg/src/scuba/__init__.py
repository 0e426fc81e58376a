"""Scuba Search and hill-climbing baselines on tunable-neutrality landscapes."""

from .landscape import (
    CountingLandscape,
    Direction,
    EvalCounter,
    Landscape,
    NegatedLandscape,
    evol,
    evol2,
    extended_neighbors,
    is_local,
    is_local_neutral,
    neutral_degree,
    neutral_neighbors,
)
from .nkq import LinkKind, NKqLandscape, NKqParams, build_nkq, sample_neutral_degree
from .search import (
    HillClimbing,
    HillClimbingTwoSteps,
    ScubaSearch,
    SearchOutcome,
    hill_climb,
    hill_climb_two_steps,
    scuba_search,
)
from .tsp import LatticeTSP, build_lattice_tsp, manhattan, sample_neutral_proportion

__version__ = "0.1.0"
