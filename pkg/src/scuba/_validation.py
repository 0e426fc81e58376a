"""Input validation and random-stream helpers.

Random streams
--------------
All randomness goes through :class:`numpy.random.Generator` backed by PCG64.

* Instance construction draws from ``SeedSequence(seed, spawn_key=(0,))``.
* Sampling (neutral-degree / neutral-proportion estimates) draws from
  ``SeedSequence(seed, spawn_key=(1,))``.
* Search runs use ``default_rng(derive_run_seed(master_seed, run_index))``,
  see :func:`derive_run_seed`.
"""

from __future__ import annotations

import numbers

import numpy as np

INSTANCE_STREAM = 0
SAMPLING_STREAM = 1

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(x: int) -> int:
    """SplitMix64 finalizer; a bijection on 64-bit integers."""
    z = x & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_run_seed(master_seed: int, run_index: int) -> int:
    """Seed of run ``run_index`` in an experiment seeded with ``master_seed``.

    ``splitmix64(master_seed + GAMMA * (run_index + 1) mod 2**64)``. GAMMA is
    odd, so the argument is injective in ``run_index`` below 2**64 and the
    finalizer is a bijection: distinct runs always get distinct seeds.
    """
    if run_index < 0:
        raise ValueError(f"run_index must be >= 0, got {run_index}")
    return splitmix64(int(master_seed) + _GOLDEN_GAMMA * (int(run_index) + 1))


def stream_rng(seed: int, stream: int) -> np.random.Generator:
    """Generator for one named stream (instance or sampling) of ``seed``."""
    seq = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(seq))


def check_random_state(seed) -> np.random.Generator:
    """Turn ``seed`` into a Generator (Generator-flavoured sklearn idiom)."""
    if seed is None:
        return np.random.default_rng()
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, numbers.Integral):
        return np.random.default_rng(int(seed) & _MASK64)
    raise ValueError(f"{seed!r} cannot be used to seed a numpy Generator")


def check_int(value, name: str, minimum: int | None = None, maximum: int | None = None) -> int:
    if isinstance(value, bool) or not isinstance(value, numbers.Integral):
        raise TypeError(f"{name} must be an integer, got {type(value).__name__}")
    value = int(value)
    if minimum is not None and value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    if maximum is not None and value > maximum:
        raise ValueError(f"{name} must be <= {maximum}, got {value}")
    return value


def check_genotype(g, n: int) -> np.ndarray:
    """Validate a bit string of length ``n`` and return it as a uint8 array."""
    arr = np.asarray(g)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"genotype must have length {n}, got shape {arr.shape}")
    if arr.size and not np.isin(arr, (0, 1)).all():
        raise ValueError("genotype entries must be 0 or 1")
    return arr.astype(np.uint8)


def check_tour(t, n: int) -> np.ndarray:
    """Validate a permutation of ``range(n)`` and return it as an int64 array."""
    arr = np.asarray(t)
    if arr.ndim != 1 or arr.shape[0] != n:
        raise ValueError(f"tour must have length {n}, got shape {arr.shape}")
    if not np.issubdtype(arr.dtype, np.integer):
        raise ValueError("tour entries must be integers")
    if not np.array_equal(np.sort(arr), np.arange(n)):
        raise ValueError("tour is not a permutation of the city indices")
    return arr.astype(np.int64)
