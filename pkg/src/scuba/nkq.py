"""NKq fitness landscapes over binary strings.

Component table layout: the K+1 bits ``(x_i, x_link0, ..., x_link{K-1})``
read as a binary number with the own allele as the most significant bit.
Raw fitness is the integer sum of the N table lookups; the normalized
fitness divides by ``N * (q - 1)``.

Instance construction consumes the instance stream of ``seed`` in this
order: link lists locus by locus (random kind only), then the whole
``(N, 2**(K+1))`` table block via ``rng.integers(0, q)``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from ._validation import (
    INSTANCE_STREAM,
    SAMPLING_STREAM,
    check_genotype,
    check_int,
    stream_rng,
)
from .landscape import Direction, Landscape

MAX_K = 20


class LinkKind(str, enum.Enum):
    ADJACENT = "adjacent"
    RANDOM = "random"


@dataclass(frozen=True)
class NKqParams:
    n: int
    k: int
    q: int
    kind: LinkKind = LinkKind.RANDOM
    seed: int = 0

    def __post_init__(self):
        n = check_int(self.n, "n", minimum=1)
        check_int(self.k, "k", minimum=0, maximum=n - 1)
        check_int(self.k, "k", maximum=MAX_K)
        check_int(self.q, "q", minimum=2)
        check_int(self.seed, "seed")
        object.__setattr__(self, "kind", LinkKind(self.kind))


@njit(cache=True)
def _component(g, i, links, k):
    idx = np.int64(g[i])
    for c in range(k):
        idx = (idx << 1) | g[links[i, c]]
    return idx


@njit(cache=True)
def _evaluate(g, links, tables):
    n, k = links.shape
    total = np.int64(0)
    for i in range(n):
        total += tables[i, _component(g, i, links, k)]
    return total


@njit(cache=True)
def _flip_fitness(g, base, links, tables, dep_ptr, dep_idx, out):
    # out[j] = fitness of g with bit j flipped; g is restored on return
    n, k = links.shape
    for j in range(n):
        delta = np.int64(0)
        for p in range(dep_ptr[j], dep_ptr[j + 1]):
            i = dep_idx[p]
            delta -= tables[i, _component(g, i, links, k)]
        g[j] ^= 1
        for p in range(dep_ptr[j], dep_ptr[j + 1]):
            i = dep_idx[p]
            delta += tables[i, _component(g, i, links, k)]
        g[j] ^= 1
        out[j] = base + delta


@njit(cache=True)
def _flip_evolutions(g, ks, maximize, links, tables, dep_ptr, dep_idx, out):
    n = g.shape[0]
    work = g.copy()
    first = np.empty(n, dtype=np.int64)
    nb = np.empty(n, dtype=np.int64)
    _flip_fitness(work, _evaluate(work, links, tables), links, tables, dep_ptr, dep_idx, first)
    for r in range(ks.shape[0]):
        kk = ks[r]
        fk = first[kk]
        work[kk] ^= 1
        _flip_fitness(work, fk, links, tables, dep_ptr, dep_idx, nb)
        work[kk] ^= 1
        best = fk
        for j in range(n):
            if (maximize and nb[j] > best) or (not maximize and nb[j] < best):
                best = nb[j]
        out[r] = best


@njit(cache=True)
def _sample_neutral_degrees(samples, links, tables, dep_ptr, dep_idx, out):
    n = samples.shape[1]
    nb = np.empty(n, dtype=np.int64)
    for s in range(samples.shape[0]):
        g = samples[s].copy()
        base = _evaluate(g, links, tables)
        _flip_fitness(g, base, links, tables, dep_ptr, dep_idx, nb)
        c = 0
        for j in range(n):
            if nb[j] == base:
                c += 1
        out[s] = c


def _make_links(n: int, k: int, kind: LinkKind, rng: np.random.Generator) -> np.ndarray:
    links = np.empty((n, k), dtype=np.int64)
    if kind is LinkKind.ADJACENT:
        right = [d for d in range(1, (k + 1) // 2 + 1)]
        left = [-d for d in range(1, k // 2 + 1)]
        offsets = np.array(right + left, dtype=np.int64)
        for i in range(n):
            links[i] = (i + offsets) % n
    else:
        for i in range(n):
            draw = rng.choice(n - 1, size=k, replace=False)
            links[i] = draw + (draw >= i)
    return links


class NKqLandscape(Landscape):
    """An NKq instance. Immutable; maximizes the component sum.

    Parameters
    ----------
    params : NKqParams
    links : (N, K) int array
        Epistatic loci of each locus, in table-index order.
    tables : (N, 2**(K+1)) int array
        Component values in ``[0, q-1]``.
    """

    direction = Direction.MAXIMIZE

    def __init__(self, params: NKqParams, links, tables):
        n, k, q = params.n, params.k, params.q
        links = np.array(links, dtype=np.int64).reshape(n, k)
        tables = np.array(tables, dtype=np.int64)
        if tables.shape != (n, 1 << (k + 1)):
            raise ValueError(f"tables must have shape {(n, 1 << (k + 1))}, got {tables.shape}")
        if tables.size and (tables.min() < 0 or tables.max() > q - 1):
            raise ValueError(f"table entries must lie in [0, {q - 1}]")
        for i in range(n):
            row = links[i]
            if len(set(row.tolist())) != k or (row == i).any() or (row < 0).any() or (row >= n).any():
                raise ValueError(f"invalid link list for locus {i}: {row.tolist()}")
        self.params = params
        self.links = links
        self.tables = tables
        self.links.setflags(write=False)
        self.tables.setflags(write=False)
        # loci whose component reads bit j: j itself and every i linking to j
        deps = [[j] for j in range(n)]
        for i in range(n):
            for j in links[i]:
                deps[int(j)].append(i)
        self._dep_ptr = np.cumsum([0] + [len(d) for d in deps]).astype(np.int64)
        self._dep_idx = np.array([i for d in deps for i in d], dtype=np.int64)

    @classmethod
    def generate(cls, params: NKqParams) -> "NKqLandscape":
        rng = stream_rng(params.seed, INSTANCE_STREAM)
        links = _make_links(params.n, params.k, params.kind, rng)
        tables = rng.integers(0, params.q, size=(params.n, 1 << (params.k + 1)), dtype=np.int64)
        return cls(params, links, tables)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def n_neighbors(self) -> int:
        return self.params.n

    @property
    def max_fitness(self) -> int:
        return self.params.n * (self.params.q - 1)

    def normalize(self, value) -> float:
        return value / self.max_fitness

    def check_solution(self, s):
        return check_genotype(s, self.n)

    def random_solution(self, rng):
        return rng.integers(0, 2, size=self.n, dtype=np.uint8)

    def evaluate(self, s) -> int:
        g = check_genotype(s, self.n)
        return int(_evaluate(g, self.links, self.tables))

    def component_values(self, s) -> np.ndarray:
        """Per-locus component values (table lookups) of genotype ``s``."""
        g = check_genotype(s, self.n).astype(np.int64)
        idx = g.copy()
        for c in range(self.params.k):
            idx = (idx << 1) | g[self.links[:, c]]
        return self.tables[np.arange(self.n), idx]

    def neighbor(self, s, k):
        g = np.array(s, dtype=np.uint8, copy=True)
        g[k] ^= 1
        return g

    def neighbor_fitness(self, s):
        g = np.array(s, dtype=np.uint8, copy=True)
        out = np.empty(self.n, dtype=np.int64)
        _flip_fitness(g, _evaluate(g, self.links, self.tables), self.links, self.tables,
                      self._dep_ptr, self._dep_idx, out)
        return out

    def neighbor_evolutions(self, s, ks):
        g = np.array(s, dtype=np.uint8, copy=True)
        ks = np.asarray(ks, dtype=np.int64)
        out = np.empty(ks.shape[0], dtype=np.int64)
        _flip_evolutions(g, ks, True, self.links, self.tables, self._dep_ptr, self._dep_idx, out)
        return out

    def neutral_degrees(self, samples) -> np.ndarray:
        """Neutral degree of each genotype (row) of ``samples``."""
        samples = np.ascontiguousarray(samples, dtype=np.uint8)
        out = np.empty(samples.shape[0], dtype=np.int64)
        _sample_neutral_degrees(samples, self.links, self.tables, self._dep_ptr, self._dep_idx, out)
        return out

    # -- instance files -------------------------------------------------

    def dumps(self) -> str:
        p = self.params
        lines = ["NKQ 1", f"{p.n} {p.k} {p.q} {p.kind.value} {p.seed}"]
        lines += [" ".join(str(int(v)) for v in row) for row in self.links]
        lines += [" ".join(str(int(v)) for v in row) for row in self.tables]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "NKqLandscape":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines or lines[0].split() != ["NKQ", "1"]:
            raise ValueError("not an NKQ 1 instance file")
        try:
            n, k, q, kind, seed = lines[1].split()
            params = NKqParams(int(n), int(k), int(q), LinkKind(kind), int(seed))
        except (IndexError, ValueError) as exc:
            raise ValueError(f"bad NKQ header line: {exc}") from exc
        body = lines[2:]
        if len(body) != 2 * params.n:
            raise ValueError(f"expected {2 * params.n} body lines, got {len(body)}")
        links = [[int(v) for v in line.split()] for line in body[: params.n]]
        tables = [[int(v) for v in line.split()] for line in body[params.n:]]
        if any(len(row) != params.k for row in links):
            raise ValueError("link line with wrong number of entries")
        return cls(params, np.array(links, dtype=np.int64).reshape(params.n, params.k), tables)

    def __repr__(self):
        p = self.params
        return f"NKqLandscape(n={p.n}, k={p.k}, q={p.q}, kind={p.kind.value!r}, seed={p.seed})"


def build_nkq(params: NKqParams) -> NKqLandscape:
    return NKqLandscape.generate(params)


def mean_neutral_degree(landscape: NKqLandscape, samples: int, rng: np.random.Generator) -> float:
    samples = check_int(samples, "samples", minimum=1)
    genotypes = rng.integers(0, 2, size=(samples, landscape.n), dtype=np.uint8)
    return float(landscape.neutral_degrees(genotypes).mean())


def sample_neutral_degree(params: NKqParams, samples: int, seed: int) -> float:
    """Mean neutral degree over ``samples`` uniform genotypes of one instance."""
    return mean_neutral_degree(build_nkq(params), samples, stream_rng(seed, SAMPLING_STREAM))
