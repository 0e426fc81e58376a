"""Travelling salesman on a randomly diluted L x L lattice (Manhattan metric).

2-opt moves are enumerated canonically as segment reversals ``t[i..j]`` with
``0 <= i < j <= N-2`` and ``(i, j) != (0, N-2)``. The last city never moves,
which picks one representative out of each complementary pair of
reversals and drops the two that reproduce the tour, leaving exactly
``N(N-3)/2`` distinct neighbors.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from ._validation import (
    INSTANCE_STREAM,
    SAMPLING_STREAM,
    check_int,
    check_tour,
    stream_rng,
)
from .landscape import Direction, Landscape


def manhattan(a, b) -> int:
    return abs(int(a[0]) - int(b[0])) + abs(int(a[1]) - int(b[1]))


def two_opt_moves(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cut positions ``(I, J)`` of the canonical 2-opt moves for ``n`` cities."""
    n = check_int(n, "n")
    if n < 4:
        raise ValueError(f"2-opt needs at least 4 cities, got {n}")
    i, j = np.triu_indices(n - 1, k=1)
    keep = ~((i == 0) & (j == n - 2))
    return i[keep].astype(np.int64), j[keep].astype(np.int64)


def apply_two_opt(t: np.ndarray, i: int, j: int) -> np.ndarray:
    out = np.array(t, copy=True)
    out[i:j + 1] = out[i:j + 1][::-1]
    return out


@njit(cache=True)
def _tour_length(t, dist):
    n = t.shape[0]
    total = np.int64(0)
    for p in range(n):
        total += dist[t[p], t[(p + 1) % n]]
    return total


@njit(cache=True)
def _two_opt_fitness(t, base, dist, out):
    # moves in canonical (i-major) order, see two_opt_moves
    n = t.shape[0]
    m = 0
    for i in range(n - 2):
        a = t[i - 1] if i > 0 else t[n - 1]
        b = t[i]
        da = dist[a]
        db = dist[b]
        lo = base - da[b]
        jmax = n - 2 if i > 0 else n - 3
        c = t[i + 1]
        for j in range(i + 1, jmax + 1):
            d = t[j + 1]
            out[m] = lo - dist[c, d] + da[c] + db[d]
            c = d
            m += 1


@njit(cache=True)
def _two_opt_best(t, base, dist, maximize):
    # best of base and every 2-opt neighbor length, without storing them
    n = t.shape[0]
    best = base
    for i in range(n - 2):
        a = t[i - 1] if i > 0 else t[n - 1]
        b = t[i]
        da = dist[a]
        db = dist[b]
        lo = base - da[b]
        jmax = n - 2 if i > 0 else n - 3
        c = t[i + 1]
        if maximize:
            for j in range(i + 1, jmax + 1):
                d = t[j + 1]
                best = max(best, lo - dist[c, d] + da[c] + db[d])
                c = d
        else:
            for j in range(i + 1, jmax + 1):
                d = t[j + 1]
                best = min(best, lo - dist[c, d] + da[c] + db[d])
                c = d
    return best


@njit(cache=True)
def _two_opt_evolutions(t, ks, maximize, dist, mi, mj, out):
    first = np.empty(mi.shape[0], dtype=np.int64)
    _two_opt_fitness(t, _tour_length(t, dist), dist, first)
    work = t.copy()
    for r in range(ks.shape[0]):
        kk = ks[r]
        work[:] = t
        lo = mi[kk]
        hi = mj[kk]
        while lo < hi:
            tmp = work[lo]
            work[lo] = work[hi]
            work[hi] = tmp
            lo += 1
            hi -= 1
        out[r] = _two_opt_best(work, first[kk], dist, maximize)


@njit(cache=True)
def _sample_neutral_counts(tours, dist, mi, mj, out):
    m = mi.shape[0]
    nb = np.empty(m, dtype=np.int64)
    for s in range(tours.shape[0]):
        t = tours[s]
        base = _tour_length(t, dist)
        _two_opt_fitness(t, base, dist, nb)
        c = 0
        for x in range(m):
            if nb[x] == base:
                c += 1
        out[s] = c


class LatticeTSP(Landscape):
    """TSP instance with cities on distinct sites of an L x L lattice.

    Minimizes the closed-tour Manhattan length (an exact integer).
    """

    direction = Direction.MINIMIZE

    def __init__(self, side: int, cities, seed: int = 0):
        side = check_int(side, "side", minimum=1)
        cities = np.array(cities, dtype=np.int64)
        if cities.ndim != 2 or cities.shape[1] != 2 or cities.shape[0] < 1:
            raise ValueError("cities must be an (N, 2) array with N >= 1")
        if cities.min() < 0 or cities.max() >= side:
            raise ValueError(f"city coordinates must lie in [0, {side})")
        if len({tuple(c) for c in cities.tolist()}) != cities.shape[0]:
            raise ValueError("cities must occupy distinct lattice sites")
        self.side = side
        self.cities = cities
        self.seed = int(seed)
        self.cities.setflags(write=False)
        diff = np.abs(cities[:, None, :] - cities[None, :, :])
        self.dist = diff.sum(axis=2)
        self.dist.setflags(write=False)
        if self.n >= 4:
            self._mi, self._mj = two_opt_moves(self.n)
        else:
            self._mi = self._mj = None

    @classmethod
    def generate(cls, side: int, n: int, seed: int) -> "LatticeTSP":
        side = check_int(side, "side", minimum=1)
        n = check_int(n, "n", minimum=1, maximum=side * side)
        rng = stream_rng(seed, INSTANCE_STREAM)
        sites = rng.choice(side * side, size=n, replace=False)
        return cls(side, np.stack([sites % side, sites // side], axis=1), seed)

    @property
    def n(self) -> int:
        return self.cities.shape[0]

    @property
    def concentration(self) -> float:
        return self.n / self.side**2

    def _require_moves(self):
        if self._mi is None:
            raise ValueError(f"2-opt neighborhood needs N >= 4 cities, instance has {self.n}")

    @property
    def n_neighbors(self) -> int:
        self._require_moves()
        return self._mi.shape[0]

    def check_solution(self, s):
        return check_tour(s, self.n)

    def random_solution(self, rng):
        return rng.permutation(self.n).astype(np.int64)

    def evaluate(self, s) -> int:
        return int(_tour_length(check_tour(s, self.n), self.dist))

    def tour_length(self, s) -> int:
        return self.evaluate(s)

    def neighbor(self, s, k):
        self._require_moves()
        return apply_two_opt(np.asarray(s, dtype=np.int64), int(self._mi[k]), int(self._mj[k]))

    def move(self, k) -> tuple[int, int]:
        self._require_moves()
        return int(self._mi[k]), int(self._mj[k])

    def key(self, s):
        """Tours are cycles: identify rotations and reflections."""
        t = np.asarray(s).tolist()
        p = t.index(0)
        fwd = t[p:] + t[:p]
        rev = [fwd[0]] + fwd[:0:-1]
        return tuple(min(fwd, rev))

    def neighbor_fitness(self, s):
        self._require_moves()
        t = np.ascontiguousarray(s, dtype=np.int64)
        out = np.empty(self._mi.shape[0], dtype=np.int64)
        _two_opt_fitness(t, _tour_length(t, self.dist), self.dist, out)
        return out

    def neighbor_evolutions(self, s, ks):
        self._require_moves()
        t = np.ascontiguousarray(s, dtype=np.int64)
        ks = np.asarray(ks, dtype=np.int64)
        out = np.empty(ks.shape[0], dtype=np.int64)
        _two_opt_evolutions(t, ks, False, self.dist, self._mi, self._mj, out)
        return out

    def neutral_counts(self, tours) -> np.ndarray:
        """Number of neutral 2-opt neighbors of each tour (row) of ``tours``."""
        self._require_moves()
        tours = np.ascontiguousarray(tours, dtype=np.int64)
        out = np.empty(tours.shape[0], dtype=np.int64)
        _sample_neutral_counts(tours, self.dist, self._mi, self._mj, out)
        return out

    # -- instance files -------------------------------------------------

    def dumps(self) -> str:
        lines = ["TSPN 1", f"{self.side} {self.n} {self.seed}"]
        lines += [f"{int(x)} {int(y)}" for x, y in self.cities]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "LatticeTSP":
        lines = [line for line in text.split("\n") if line.strip()]
        if not lines or lines[0].split() != ["TSPN", "1"]:
            raise ValueError("not a TSPN 1 instance file")
        try:
            side, n, seed = (int(v) for v in lines[1].split())
            cities = [[int(v) for v in line.split()] for line in lines[2:]]
        except ValueError as exc:
            raise ValueError(f"malformed TSPN file: {exc}") from exc
        if len(cities) != n:
            raise ValueError(f"expected {n} city lines, got {len(cities)}")
        return cls(side, cities, seed)

    def __repr__(self):
        return f"LatticeTSP(side={self.side}, n={self.n}, seed={self.seed})"


def build_lattice_tsp(side: int, n: int, seed: int) -> LatticeTSP:
    return LatticeTSP.generate(side, n, seed)


def mean_neutral_proportion(landscape: LatticeTSP, samples: int, rng: np.random.Generator) -> float:
    samples = check_int(samples, "samples", minimum=1)
    tours = rng.permuted(np.tile(np.arange(landscape.n, dtype=np.int64), (samples, 1)), axis=1)
    return float(landscape.neutral_counts(tours).mean() / landscape.n_neighbors)


def sample_neutral_proportion(side: int, n: int, samples: int, seed: int) -> float:
    """Mean fraction of neutral 2-opt neighbors over uniform random tours of one instance."""
    return mean_neutral_proportion(build_lattice_tsp(side, n, seed), samples,
                                   stream_rng(seed, SAMPLING_STREAM))
