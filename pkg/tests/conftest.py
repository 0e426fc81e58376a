"""Shared fixtures and brute-force oracles.

The oracles deliberately avoid the package's kernels: NKq fitness is
recomputed from the formula in plain Python and neighborhoods are built by
explicit bit flips / segment reversals.
"""

import itertools

import numpy as np
import pytest

from scuba.landscape import Direction, Landscape
from scuba.nkq import NKqLandscape, NKqParams


class BitFunctionLandscape(Landscape):
    """One-bit-flip landscape over {0,1}^n with an arbitrary fitness function.

    Uses the generic (uncompiled) batch methods of the base class.
    """

    def __init__(self, n, func, direction=Direction.MAXIMIZE):
        self.n = n
        self.func = func
        self.direction = direction

    @property
    def n_neighbors(self):
        return self.n

    def evaluate(self, s):
        return int(self.func(tuple(int(b) for b in s)))

    def neighbor(self, s, k):
        g = np.array(s, dtype=np.uint8, copy=True)
        g[k] ^= 1
        return g

    def random_solution(self, rng):
        return rng.integers(0, 2, size=self.n, dtype=np.uint8)


def all_genotypes(n):
    return [np.array(bits, dtype=np.uint8) for bits in itertools.product((0, 1), repeat=n)]


def oracle_nkq_fitness(land: NKqLandscape, g) -> int:
    k = land.params.k
    total = 0
    for i in range(land.params.n):
        bits = [int(g[i])] + [int(g[j]) for j in land.links[i]]
        idx = 0
        for b in bits:
            idx = idx * 2 + b
        assert idx < 2 ** (k + 1)
        total += int(land.tables[i][idx])
    return total


def flips(g):
    out = []
    for j in range(len(g)):
        h = list(int(b) for b in g)
        h[j] ^= 1
        out.append(tuple(h))
    return out


def ball(g, radius):
    """Genotypes within Hamming distance ``radius`` of ``g`` (excluding g)."""
    g = tuple(int(b) for b in g)
    out = []
    for r in range(1, radius + 1):
        for idx in itertools.combinations(range(len(g)), r):
            h = list(g)
            for j in idx:
                h[j] ^= 1
            out.append(tuple(h))
    return out


class NKqOracle:
    """Exhaustive tables of f, evol, evol2, Degn and local predicates."""

    def __init__(self, land: NKqLandscape):
        self.land = land
        n = land.params.n
        self.f = {tuple(int(b) for b in g): oracle_nkq_fitness(land, g) for g in all_genotypes(n)}
        self.evol = {g: max([v] + [self.f[h] for h in flips(g)]) for g, v in self.f.items()}
        self.evol2 = {g: max([v] + [self.f[h] for h in ball(g, 2)]) for g, v in self.f.items()}
        self.degn = {g: sum(self.f[h] == v for h in flips(g)) for g, v in self.f.items()}
        self.local = {g: all(self.f[h] <= v for h in flips(g)) for g, v in self.f.items()}
        self.local2 = {g: all(self.f[h] <= v for h in ball(g, 2)) for g, v in self.f.items()}
        self.local_neutral = {
            g: all(self.evol[h] <= self.evol[g] for h in flips(g) if self.f[h] == self.f[g])
            for g in self.f
        }


def make_nkq(n, k, q, seed, kind="random"):
    return NKqLandscape.generate(NKqParams(n, k, q, kind, seed))


@pytest.fixture
def nkq_factory():
    return make_nkq
