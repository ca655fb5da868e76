"""Separable minimax solver: conjugate-tracking strongly monotone mirror prox.

The lifted primal-dual iterate is (z^x, z^y, dual_f, dual_g), but the dual
blocks are never materialized: the state stores primal pre-images zf, zg with
dual_f = grad f(zf), dual_g = grad g(zg).  Every prox step in the conjugate
blocks then reduces to a convex combination of pre-images, so the solver
needs only gradient access to f, g, h.  The method is deterministic.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import bregman_euclidean, conjugate_divergence
from .engines import BlockSpace, ConjugateBlock, EuclideanBlock
from .errors import InvalidToleranceError, NonPositiveModulusError
from .problems import SeparableMinimaxProblem, require_valid
from .testbed import ExactSolution, quad_data
from .tracing import CountingCoupling, CountingSmoothOracle, OracleCounter, make_record

__all__ = [
    "MinimaxState",
    "MinimaxResult",
    "lambda_mm",
    "iteration_budget_mm",
    "mm_step",
    "solve_minimax",
    "potential_mm",
]


@dataclass
class MinimaxState:
    """Iterate with dual blocks represented by primal pre-images zf, zg."""

    zx: np.ndarray
    zy: np.ndarray
    zf: np.ndarray
    zg: np.ndarray

    def copy(self) -> "MinimaxState":
        return MinimaxState(self.zx.copy(), self.zy.copy(), self.zf.copy(), self.zg.copy())


@dataclass
class MinimaxResult:
    x: np.ndarray
    y: np.ndarray
    trace: list
    schedule: dict
    counter: OracleCounter
    state: MinimaxState


def lambda_mm(lx: float, mu_x: float, ly: float, mu_y: float,
              lxx: float, lxy: float, lyy: float) -> float:
    """Relative-Lipschitzness constant of the lifted operator.

    lambda = 1 + sqrt(Lx/mux) + sqrt(Ly/muy) + Lxx/mux + Lxy/sqrt(mux*muy)
    + Lyy/muy.
    """
    if mu_x <= 0 or mu_y <= 0:
        raise NonPositiveModulusError("mu_x and mu_y must be positive")
    return (1.0 + math.sqrt(lx / mu_x) + math.sqrt(ly / mu_y)
            + lxx / mu_x + lxy / math.sqrt(mu_x * mu_y) + lyy / mu_y)


def iteration_budget_mm(lam: float, lx: float, mu_x: float, ly: float, mu_y: float,
                        lxx: float, lxy: float, lyy: float,
                        eps0: float, eps: float) -> int:
    """Fixed iteration count driving V^r below the gap-epsilon radius.

    Starts from the initial-divergence bound B0 = (1 + Lx/mux + Ly/muy)*eps0,
    targets Bend = eps/2 divided by the best-response smoothness sum, and
    divides by the per-step log-contraction log(1 + 1/lambda).
    """
    if eps <= 0 or eps > eps0:
        raise InvalidToleranceError(f"need eps0 >= eps > 0, got eps0={eps0}, eps={eps}")
    b0 = (1.0 + lx / mu_x + ly / mu_y) * eps0
    denom = ((mu_x + lx + lxx) / mu_x + (mu_y + ly + lyy) / mu_y
             + lxy ** 2 / (mu_x * mu_y))
    bend = 0.5 * eps / denom
    if b0 <= bend:
        return 1
    return max(1, math.ceil(math.log(b0 / bend) / math.log1p(1.0 / lam)))


def mm_step(problem: SeparableMinimaxProblem, state: MinimaxState, lam: float,
            counter: OracleCounter | None = None) -> MinimaxState:
    """One full iteration (gradient step + extragradient step).

    Exactly two gradient calls per oracle family.  The gradient step on the
    primal blocks is taken from z_t; the dual pre-images take the convex
    combinations that realize the conjugate-space prox maps.
    """
    f, g, h = problem.f, problem.g, problem.h
    if counter is not None:
        f = CountingSmoothOracle(f, counter, "f")
        g = CountingSmoothOracle(g, counter, "g")
        h = CountingCoupling(h, counter)
    mu_x, mu_y = problem.mu_x, problem.mu_y
    zx, zy, zf, zg = state.zx, state.zy, state.zf, state.zg

    phi_x = mu_x * zx + f.gradient(zf) + h.grad_x(zx, zy)
    phi_y = mu_y * zy + g.gradient(zg) - h.grad_y(zx, zy)
    zx_h = zx - phi_x / (lam * mu_x)
    zy_h = zy - phi_y / (lam * mu_y)
    zf_h = (1.0 - 1.0 / lam) * zf + zx / lam
    zg_h = (1.0 - 1.0 / lam) * zg + zy / lam

    phi_x = mu_x * zx_h + f.gradient(zf_h) + h.grad_x(zx_h, zy_h)
    phi_y = mu_y * zy_h + g.gradient(zg_h) - h.grad_y(zx_h, zy_h)
    w = 1.0 + lam
    zx_n = zx_h / w + lam * zx / w - phi_x / (w * mu_x)
    zy_n = zy_h / w + lam * zy / w - phi_y / (w * mu_y)
    zf_n = (lam * zf + zx_h) / w
    zg_n = (lam * zg + zy_h) / w
    return MinimaxState(zx_n, zy_n, zf_n, zg_n)


def potential_mm(problem: SeparableMinimaxProblem, state: MinimaxState,
                 sol: ExactSolution) -> float:
    """V^r from the state to the lifted solution, via primal pre-images."""
    return (problem.mu_x * bregman_euclidean(state.zx, sol.x)
            + problem.mu_y * bregman_euclidean(state.zy, sol.y)
            + conjugate_divergence(problem.f, state.zf, sol.x)
            + conjugate_divergence(problem.g, state.zg, sol.y))


def solve_minimax(problem: SeparableMinimaxProblem, x0, y0, *, eps0: float, eps: float,
                  lam: float | None = None, steps: int | None = None,
                  reference: ExactSolution | None = None, gap_fn=None,
                  trace_every: int = 1, target_gap: float | None = None) -> MinimaxResult:
    """Run the fixed budget from (x0, y0, x0, y0) and return the primal pair.

    The stopping rule is the precomputed budget; ``target_gap`` optionally
    stops early when the supplied ``gap_fn`` crosses it (testbed mode only).
    """
    require_valid(problem)
    x0 = np.asarray(x0, dtype=np.float64)
    y0 = np.asarray(y0, dtype=np.float64)
    f, g, h = problem.f, problem.g, problem.h
    lam_val = lam if lam is not None else lambda_mm(
        f.smoothness, problem.mu_x, g.smoothness, problem.mu_y,
        h.lip_xx, h.lip_xy, h.lip_yy)
    t_total = steps if steps is not None else iteration_budget_mm(
        lam_val, f.smoothness, problem.mu_x, g.smoothness, problem.mu_y,
        h.lip_xx, h.lip_xy, h.lip_yy, eps0, eps)

    counter = OracleCounter()
    t0 = time.monotonic_ns()
    state = MinimaxState(x0.copy(), y0.copy(), x0.copy(), y0.copy())
    # materialize the lifted z0 duals once (Lemma-11 bookkeeping)
    CountingSmoothOracle(f, counter, "f").gradient(x0)
    CountingSmoothOracle(g, counter, "g").gradient(y0)

    trace = []

    def record(i, st):
        pot = potential_mm(problem, st, reference) if reference is not None else float("nan")
        gap = gap_fn(st.zx, st.zy) if gap_fn is not None else float("nan")
        trace.append(make_record(i, counter, pot, gap, t0))
        return gap

    record(0, state)
    for t in range(1, t_total + 1):
        state = mm_step(problem, state, lam_val, counter)
        if t % trace_every == 0 or t == t_total:
            gap = record(t, state)
            if target_gap is not None and gap_fn is not None and gap <= target_gap:
                break

    schedule = {"lambda": lam_val, "T": t_total}
    return MinimaxResult(state.zx.copy(), state.zy.copy(), trace, schedule, counter, state)


# ---------------------------------------------------------------------------
# lifted-space view (reference engine support)
# ---------------------------------------------------------------------------

def mm_lifted(problem: SeparableMinimaxProblem):
    """Explicit lifted space and operator for the generic engine.

    Requires quadratic f, g with invertible curvature (explicit conjugates).
    Returns (space, operator) over flat vectors [x, y, dual_f, dual_g].
    """
    a_mat, a_vec = quad_data(problem.f)
    b_mat, b_vec = quad_data(problem.g)
    dx, dy = problem.dim_x, problem.dim_y
    space = BlockSpace([
        EuclideanBlock(dx, problem.mu_x),
        EuclideanBlock(dy, problem.mu_y),
        ConjugateBlock(a_mat, a_vec, 1.0),
        ConjugateBlock(b_mat, b_vec, 1.0),
    ])
    conj_f = space.blocks[2]
    conj_g = space.blocks[3]
    h = problem.h

    def operator(z: np.ndarray) -> np.ndarray:
        zx, zy, pf, pg = space.split(z)
        return np.concatenate([
            problem.mu_x * zx + pf + h.grad_x(zx, zy),
            problem.mu_y * zy + pg - h.grad_y(zx, zy),
            conj_f.grad_conjugate(pf) - zx,
            conj_g.grad_conjugate(pg) - zy,
        ])

    return space, operator


def mm_lift_state(problem: SeparableMinimaxProblem, state: MinimaxState) -> np.ndarray:
    """Flat lifted vector of a pre-image state (duals materialized)."""
    return np.concatenate([
        state.zx, state.zy,
        problem.f.gradient(state.zf), problem.g.gradient(state.zg),
    ])
