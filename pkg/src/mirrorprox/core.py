"""Numeric substrate: dense vectors, Bregman divergences, seeded sampling.

Everything downstream works on 1-D float64 numpy arrays.  Dual iterates are
never represented explicitly; divergences between them are evaluated through
primal pre-images (see :func:`conjugate_divergence`), so no convex conjugate
is ever required at run time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimMismatchError, EmptyListError, NonFiniteConstantError

__all__ = [
    "as_vec",
    "bregman_euclidean",
    "conjugate_divergence",
    "DiscreteDistribution",
    "SeededRng",
    "sample_index",
]


def as_vec(x, dim: int | None = None) -> np.ndarray:
    """Coerce ``x`` to a finite 1-D float64 array, checking ``dim`` if given."""
    v = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if v.ndim != 1:
        raise DimMismatchError(f"expected a vector, got shape {v.shape}")
    if dim is not None and v.shape[0] != dim:
        raise DimMismatchError(f"expected dim {dim}, got {v.shape[0]}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteConstantError("vector has non-finite entries")
    return v


def bregman_euclidean(x: np.ndarray, x2: np.ndarray) -> float:
    """Euclidean divergence ``0.5 * ||x - x2||^2``; symmetric, non-negative."""
    x = np.asarray(x, dtype=np.float64)
    x2 = np.asarray(x2, dtype=np.float64)
    if x.shape != x2.shape:
        raise DimMismatchError(f"shape {x.shape} vs {x2.shape}")
    d = x - x2
    return 0.5 * float(d @ d)


def conjugate_divergence(f, u: np.ndarray, v: np.ndarray) -> float:
    """Divergence between the duals of ``u`` and ``v``, evaluated in primal space.

    For differentiable convex ``f`` this equals the conjugate-space Bregman
    divergence between ``grad f(u)`` (center) and ``grad f(v)``, but is
    computed as ``f(u) - f(v) - <grad f(v), u - v>``, so only primal oracle
    access is needed.  Non-negative by convexity.
    """
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise DimMismatchError(f"shape {u.shape} vs {v.shape}")
    return float(f.value(u) - f.value(v) - f.gradient(v) @ (u - v))


class DiscreteDistribution:
    """Fixed distribution over ``{0, ..., n-1}`` sampled by inverse CDF.

    Weights must be non-negative and sum to 1 within 1e-12.  Prefix sums are
    precomputed once; each draw is a binary search (``searchsorted``).
    Instances are immutable and safe to share across threads.
    """

    __slots__ = ("weights", "prefix_sums")

    def __init__(self, weights) -> None:
        w = np.asarray(weights, dtype=np.float64)
        if w.ndim != 1 or w.size == 0:
            raise EmptyListError("weights must be a non-empty 1-D array")
        if not np.all(np.isfinite(w)):
            raise NonFiniteConstantError("weights have non-finite entries")
        if np.any(w < 0):
            raise ValueError("weights must be non-negative")
        total = float(w.sum())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, expected 1 within 1e-12")
        self.weights = w
        self.prefix_sums = np.cumsum(w)
        # guard against cumulative rounding in the final entry
        self.prefix_sums[-1] = 1.0

    def __len__(self) -> int:
        return int(self.weights.size)

    def index_for(self, u: float) -> int:
        """Index ``i`` with ``prefix[i-1] <= u < prefix[i]`` for ``u`` in [0, 1)."""
        i = int(np.searchsorted(self.prefix_sums, u, side="right"))
        return min(i, len(self) - 1)

    def sample(self, rng: "SeededRng") -> int:
        return self.index_for(rng.uniform())


@dataclass
class SeededRng:
    """Deterministic PRNG fully determined by its seed.

    Thin wrapper over numpy's PCG64 generator.  Identical seed plus identical
    call sequence yields a bitwise-identical stream, which is what makes
    solver traces reproducible.  Single-owner: each concurrent run gets its
    own instance.  Draw order inside solvers is documented where they sample.
    """

    seed: int
    _gen: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._gen = np.random.Generator(np.random.PCG64(int(self.seed)))

    def uniform(self) -> float:
        """One float64 uniform in [0, 1)."""
        return float(self._gen.random())

    def randint(self, n: int) -> int:
        """One integer uniform in {0, ..., n-1}."""
        return int(self._gen.integers(n))

    def normal(self, size=None):
        return self._gen.standard_normal(size)


def sample_index(dist: DiscreteDistribution, rng: SeededRng) -> int:
    """Draw one index from ``dist`` by inverse CDF over its prefix sums."""
    return dist.sample(rng)
