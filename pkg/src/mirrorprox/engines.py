"""Reference mirror-prox engines over explicit lifted spaces.

These engines run the prox-scheme recurrences directly on the full
primal-dual vector, with dual blocks stored explicitly and prox maps
evaluated in closed form (quadratic conjugates).  Production solvers never
do this; the engines exist so the conjugate-tracking implementations can be
checked against an independent realization of the same scheme.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystemError

__all__ = ["EuclideanBlock", "ConjugateBlock", "BlockSpace",
           "sm_mirror_prox", "rand_mirror_prox"]


@dataclass
class EuclideanBlock:
    """Divergence weight * 0.5 ||. - center||^2 on a slice of the vector."""

    dim: int
    weight: float


@dataclass
class ConjugateBlock:
    """Divergence weight * V^{f*} for f(x) = 0.5 x^T A x + a^T x, A invertible."""

    a_mat: np.ndarray  # dense symmetric positive definite
    a_vec: np.ndarray
    weight: float

    def __post_init__(self) -> None:
        self.a_mat = np.asarray(self.a_mat, dtype=np.float64)
        if self.a_mat.ndim == 1:
            self.a_mat = np.diag(self.a_mat)
        self.a_vec = np.asarray(self.a_vec, dtype=np.float64)
        try:
            self.inv = np.linalg.inv(self.a_mat)
        except np.linalg.LinAlgError as exc:
            raise SingularSystemError("conjugate block needs invertible curvature") from exc

    @property
    def dim(self) -> int:
        return self.a_vec.size

    def grad_conjugate(self, p: np.ndarray) -> np.ndarray:
        return self.inv @ (p - self.a_vec)


class BlockSpace:
    """Block-separable regularizer over a flat vector; closed-form prox maps.

    The regularizer is a sum of Euclidean blocks (weight * 0.5||.||^2) and
    conjugate blocks (weight * f*), matching the lifted-space regularizers
    the solvers use implicitly.
    """

    def __init__(self, blocks) -> None:
        self.blocks = list(blocks)
        self.slices = []
        off = 0
        for b in self.blocks:
            self.slices.append(slice(off, off + b.dim))
            off += b.dim
        self.dim = off

    def split(self, z: np.ndarray):
        return [z[s] for s in self.slices]

    # -- divergence -------------------------------------------------------
    def divergence(self, z_from: np.ndarray, z_to: np.ndarray) -> float:
        total = 0.0
        for b, s in zip(self.blocks, self.slices):
            d = z_to[s] - z_from[s]
            if isinstance(b, EuclideanBlock):
                total += b.weight * 0.5 * float(d @ d)
            else:
                total += b.weight * 0.5 * float(d @ (b.inv @ d))
        return total

    # -- prox maps ----------------------------------------------------------
    def prox(self, center: np.ndarray, v: np.ndarray, lam: float) -> np.ndarray:
        """argmin_z <v, z> + lam * V^r_center(z)."""
        out = np.empty_like(center)
        for b, s in zip(self.blocks, self.slices):
            if isinstance(b, EuclideanBlock):
                out[s] = center[s] - v[s] / (lam * b.weight)
            else:
                out[s] = center[s] - (b.a_mat @ v[s]) / (lam * b.weight)
        return out

    def composite_prox(self, center_half: np.ndarray, center_t: np.ndarray,
                       v: np.ndarray, lam: float, m: float) -> np.ndarray:
        """argmin_z <v, z> + m * V^r_{center_half}(z) + lam * V^r_{center_t}(z)."""
        w = m + lam
        out = np.empty_like(center_t)
        for b, s in zip(self.blocks, self.slices):
            mix = (m * center_half[s] + lam * center_t[s]) / w
            if isinstance(b, EuclideanBlock):
                out[s] = mix - v[s] / (b.weight * w)
            else:
                out[s] = mix - (b.a_mat @ v[s]) / (b.weight * w)
        return out


def sm_mirror_prox(operator, space: BlockSpace, lam: float, m: float, steps: int,
                   z0: np.ndarray):
    """Strongly monotone mirror prox on an explicit operator.

    Per step: a gradient prox step from z_t, then the m-weighted composite
    step that mixes divergences to the half point and to z_t.  With m = 0 the
    second step degenerates to a plain prox step from z_t.  Returns the lists
    (iterates, half_iterates) with iterates[0] == z0.
    """
    z = np.array(z0, dtype=np.float64)
    iterates = [z.copy()]
    halves = []
    for _ in range(steps):
        z_half = space.prox(z, operator(z) / lam, 1.0)
        v = operator(z_half)
        z = space.composite_prox(z_half, z, v, lam, m)
        halves.append(z_half.copy())
        iterates.append(z.copy())
    return iterates, halves


def rand_mirror_prox(estimator, estimator_aux, space: BlockSpace, lam: float,
                     indices, z0: np.ndarray):
    """Randomized mirror prox driven by an explicit index sequence.

    ``estimator(idx, w)`` evaluates the sampled operator at the current
    point; ``estimator_aux(idx, w, w_aux)`` evaluates the extragradient
    estimate (which may reference both points).  Both prox steps are centered
    at w_s.  Returns (iterates, half_iterates).
    """
    w = np.array(z0, dtype=np.float64)
    iterates = [w.copy()]
    halves = []
    for idx in indices:
        w_half = space.prox(w, estimator(idx, w) / lam, 1.0)
        v = estimator_aux(idx, w, w_half)
        w = space.prox(w, v / lam, 1.0)
        halves.append(w_half.copy())
        iterates.append(w.copy())
    return iterates, halves
