"""Landscape contract and the neutrality / evolvability primitives.

Neighborhoods here never contain the solution itself. The inclusive
neighborhood used in the usual definitions is ``neighbors(s) | {s}``, so the
neutral degree is simply the number of neutral neighbors we enumerate.
"""

from __future__ import annotations

import enum
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator

import numpy as np


class Direction(enum.Enum):
    MAXIMIZE = "maximize"
    MINIMIZE = "minimize"

    def better(self, a, b) -> bool:
        """Strict comparison: is ``a`` better than ``b``?"""
        return a > b if self is Direction.MAXIMIZE else a < b

    def best(self, values):
        """Best element of a nonempty collection."""
        values = np.asarray(values)
        if values.size == 0:
            raise ValueError("best() of an empty collection")
        return int(values.max() if self is Direction.MAXIMIZE else values.min())

    @property
    def flipped(self) -> "Direction":
        return Direction.MINIMIZE if self is Direction.MAXIMIZE else Direction.MAXIMIZE


class Landscape(ABC):
    """A finite search space with exact integer fitness and a neighborhood.

    Subclasses provide :meth:`evaluate`, :meth:`neighbor` and
    :attr:`n_neighbors`; the batch methods have generic fallbacks that
    landscapes with compiled kernels override. Batch results must agree
    exactly with calling :meth:`evaluate` on each solution.
    """

    direction: Direction = Direction.MAXIMIZE

    @abstractmethod
    def evaluate(self, s) -> int:
        ...

    @property
    @abstractmethod
    def n_neighbors(self) -> int:
        ...

    @abstractmethod
    def neighbor(self, s, k: int):
        """The ``k``-th neighbor of ``s`` in canonical order."""

    @abstractmethod
    def random_solution(self, rng: np.random.Generator):
        ...

    def check_solution(self, s):
        return s

    def key(self, s) -> Hashable:
        """Hashable identity of a solution (used for deduplication)."""
        return tuple(int(v) for v in np.asarray(s))

    def neighbors(self, s) -> Iterator:
        for k in range(self.n_neighbors):
            yield self.neighbor(s, k)

    def neighbor_fitness(self, s) -> np.ndarray:
        """Fitness of every neighbor of ``s`` in canonical order."""
        return np.array([self.evaluate(x) for x in self.neighbors(s)], dtype=np.int64)

    def neighbor_evolutions(self, s, ks) -> np.ndarray:
        """``evol`` of each neighbor ``neighbor(s, k)`` for ``k`` in ``ks``."""
        out = np.empty(len(ks), dtype=np.int64)
        for r, k in enumerate(ks):
            x = self.neighbor(s, int(k))
            vals = np.append(self.neighbor_fitness(x), self.evaluate(x))
            out[r] = self.direction.best(vals)
        return out

    def normalize(self, value) -> float:
        """Fitness in reporting units."""
        return float(value)


@dataclass
class EvalCounter:
    count: int = 0

    def add(self, n: int) -> None:
        self.count += int(n)


class CountingLandscape(Landscape):
    """Wraps a landscape and counts every fitness evaluation made through it.

    ``evaluate`` costs 1, ``neighbor_fitness`` costs one per neighbor and
    ``neighbor_evolutions`` costs ``1 + n_neighbors`` per requested neighbor.
    Nothing is cached. One wrapper per search run.
    """

    def __init__(self, inner: Landscape, counter: EvalCounter | None = None):
        self.inner = inner
        self.counter = counter if counter is not None else EvalCounter()
        self.direction = inner.direction

    @property
    def n_neighbors(self) -> int:
        return self.inner.n_neighbors

    @property
    def evaluations(self) -> int:
        return self.counter.count

    def evaluate(self, s) -> int:
        self.counter.add(1)
        return self.inner.evaluate(s)

    def neighbor(self, s, k):
        return self.inner.neighbor(s, k)

    def neighbors(self, s):
        return self.inner.neighbors(s)

    def random_solution(self, rng):
        return self.inner.random_solution(rng)

    def check_solution(self, s):
        return self.inner.check_solution(s)

    def key(self, s):
        return self.inner.key(s)

    def normalize(self, value):
        return self.inner.normalize(value)

    def neighbor_fitness(self, s):
        self.counter.add(self.inner.n_neighbors)
        return self.inner.neighbor_fitness(s)

    def neighbor_evolutions(self, s, ks):
        self.counter.add(len(ks) * (1 + self.inner.n_neighbors))
        return self.inner.neighbor_evolutions(s, ks)


class NegatedLandscape(Landscape):
    """Mirror image of a landscape: fitness negated, direction flipped."""

    def __init__(self, inner: Landscape):
        self.inner = inner
        self.direction = inner.direction.flipped

    @property
    def n_neighbors(self):
        return self.inner.n_neighbors

    def evaluate(self, s):
        return -self.inner.evaluate(s)

    def neighbor(self, s, k):
        return self.inner.neighbor(s, k)

    def neighbors(self, s):
        return self.inner.neighbors(s)

    def random_solution(self, rng):
        return self.inner.random_solution(rng)

    def check_solution(self, s):
        return self.inner.check_solution(s)

    def key(self, s):
        return self.inner.key(s)

    def neighbor_fitness(self, s):
        return -self.inner.neighbor_fitness(s)

    def neighbor_evolutions(self, s, ks):
        return -self.inner.neighbor_evolutions(s, ks)

    def normalize(self, value):
        return -self.inner.normalize(-value)


def profile(landscape: Landscape, s) -> tuple[int, np.ndarray, int]:
    """``(f(s), neighbor fitnesses, evol(s))`` for one solution."""
    f = landscape.evaluate(s)
    nf = landscape.neighbor_fitness(s)
    best = f if nf.size == 0 else landscape.direction.best(np.append(nf, f))
    return f, nf, best


def evol(landscape: Landscape, s) -> int:
    """Best fitness over ``s`` and its neighbors."""
    return profile(landscape, s)[2]


def neutral_neighbors(landscape: Landscape, s) -> list:
    f, nf, _ = profile(landscape, s)
    return [landscape.neighbor(s, int(k)) for k in np.flatnonzero(nf == f)]


def neutral_degree(landscape: Landscape, s) -> int:
    f, nf, _ = profile(landscape, s)
    return int(np.count_nonzero(nf == f))


def is_local(landscape: Landscape, s, g: Callable, W: Callable[..., Iterable]) -> bool:
    """True iff no solution of ``W(s)`` is strictly better than ``s`` under ``g``."""
    gs = g(s)
    better = landscape.direction.better
    return not any(better(g(x), gs) for x in W(s))


def is_local_neutral(landscape: Landscape, s) -> bool:
    """No neutral neighbor has strictly better evolvability (vacuously true)."""
    f, nf, best = profile(landscape, s)
    ks = np.flatnonzero(nf == f)
    if ks.size == 0:
        return True
    evols = landscape.neighbor_evolutions(s, ks)
    return not landscape.direction.better(landscape.direction.best(evols), best)


def extended_neighbors(landscape: Landscape, s) -> list:
    """Solutions within two neighborhood moves of ``s``, excluding ``s``, deduplicated."""
    seen = {landscape.key(s)}
    out = []
    for x in landscape.neighbors(s):
        for y in (x, *landscape.neighbors(x)):
            key = landscape.key(y)
            if key not in seen:
                seen.add(key)
                out.append(y)
    return out


def evol2(landscape: Landscape, s) -> int:
    """Best fitness over the extended (two-move) neighborhood of ``s``."""
    values = [landscape.evaluate(s)]
    values.extend(landscape.evaluate(x) for x in extended_neighbors(landscape, s))
    return landscape.direction.best(values)
