"""Outer reductions lifting per-summand strong convexity requirements.

Both reductions iterate proximal subproblems: minimize (or saddle) the
original objective plus a quarter-modulus divergence to the current iterate,
solved by any subsolver meeting a quarter-divergence contract.  Each outer
step then halves the (expected) divergence to the true solution.

The linear shifts created by re-centering are folded into summand 0's oracle
(scaled by n, since objectives average the summands), leaving every
smoothness constant untouched.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPositiveModulusError
from .finitesum import solve_finitesum
from .mmfs import solve_mmfs
from .oracles import TiltedOracle
from .problems import FiniteSumProblem, MinimaxFiniteSumProblem

__all__ = [
    "shifted_fs_subproblem",
    "shifted_mmfs_subproblem",
    "redx_convex",
    "redx_minimax",
    "fs_subsolver",
    "mmfs_subsolver",
]


def shifted_fs_subproblem(summands, mu: float, x_center: np.ndarray) -> FiniteSumProblem:
    """min (1/n) sum f_i + (mu/4) V_{x_center}: modulus mu/4, tilt -(mu/4)<x_center, .>."""
    if mu <= 0:
        raise NonPositiveModulusError("aggregate modulus must be positive")
    n = len(summands)
    tilted = [TiltedOracle(summands[0], 0.0, -(n * mu / 4.0) * x_center)]
    tilted.extend(summands[1:])
    return FiniteSumProblem(tilted, mu / 4.0)


def shifted_mmfs_subproblem(fs, gs, hs, mu_x: float, mu_y: float,
                            x_center: np.ndarray, y_center: np.ndarray) -> MinimaxFiniteSumProblem:
    """Saddle subproblem with quarter-modulus re-centering on both sides."""
    if mu_x <= 0 or mu_y <= 0:
        raise NonPositiveModulusError("aggregate moduli must be positive")
    n = len(fs)
    fs2 = [TiltedOracle(fs[0], 0.0, -(n * mu_x / 4.0) * x_center)] + list(fs[1:])
    gs2 = [TiltedOracle(gs[0], 0.0, -(n * mu_y / 4.0) * y_center)] + list(gs[1:])
    return MinimaxFiniteSumProblem(fs2, gs2, list(hs), mu_x / 4.0, mu_y / 4.0)


def redx_convex(summands, mu: float, x0, steps: int, subsolver) -> tuple[np.ndarray, list]:
    """Outer reduction for an aggregate-mu-strongly-convex finite sum.

    ``subsolver(subproblem, x_init, k)`` must return a point whose expected
    Euclidean divergence to the subproblem minimizer is at most a quarter of
    the divergence from ``x_init``.  With steps = 0 returns x0 unchanged.
    Returns (x, iterates).
    """
    x = np.asarray(x0, dtype=np.float64).copy()
    iterates = [x.copy()]
    for k in range(steps):
        sub = shifted_fs_subproblem(summands, mu, x)
        x = np.asarray(subsolver(sub, x, k), dtype=np.float64)
        iterates.append(x.copy())
    return x, iterates


def redx_minimax(fs, gs, hs, mu_x: float, mu_y: float, z0, steps: int,
                 subsolver) -> tuple[tuple[np.ndarray, np.ndarray], list]:
    """Outer reduction for an aggregate strongly convex-concave minimax finite sum."""
    x = np.asarray(z0[0], dtype=np.float64).copy()
    y = np.asarray(z0[1], dtype=np.float64).copy()
    iterates = [(x.copy(), y.copy())]
    for k in range(steps):
        sub = shifted_mmfs_subproblem(fs, gs, hs, mu_x, mu_y, x, y)
        x, y = subsolver(sub, x, y, k)
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        iterates.append((x.copy(), y.copy()))
    return (x, y), iterates


@dataclass
class fs_subsolver:
    """Default finite-sum subsolver: two warm-started phases per call.

    The tilt leaves smoothness constants alone, so the schedule of every call
    is identical; the warm start pays the remaining accuracy.
    """

    phases: int = 2
    seed: int = 0

    def __call__(self, sub: FiniteSumProblem, x_init, k: int):
        res = solve_finitesum(sub, x_init, eps0=1.0, eps=1.0, seed=self.seed + k,
                              phases=self.phases)
        return res.x


@dataclass
class mmfs_subsolver:
    """Default minimax-finite-sum subsolver: a gamma-scaled outer budget."""

    outer_steps: int | None = None
    seed: int = 0

    def __call__(self, sub: MinimaxFiniteSumProblem, x_init, y_init, k: int):
        import math

        from .mmfs import schedule_mmfs

        if self.outer_steps is None:
            sched = schedule_mmfs(sub, 1.0, 1.0, outer_steps=1)
            g = sched.gamma
            t = max(1, math.ceil(math.log(4.0) / math.log((1 + 4 * g) / (4 * g))))
        else:
            t = self.outer_steps
        res = solve_mmfs(sub, x_init, y_init, eps0=1.0, eps=1.0, seed=self.seed + k,
                         outer_steps=t)
        return res.x, res.y
