"""Finite-sum solver: phase-restarted randomized mirror prox.

Each phase runs sigma+1 randomized extragradient iterations (sigma uniform in
{0, ..., S-1}) on the lifted primal-dual problem, then restarts from the
aggregate point, which halves the expected divergence to the solution when
S >= 2*lambda.  Dual blocks live as primal pre-images wf[i]; per-iteration
cost is O(d) thanks to an incrementally maintained gradient sum.

RNG draw order per phase: one integer for sigma, then one index draw per
iteration.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import DiscreteDistribution, SeededRng, bregman_euclidean, conjugate_divergence
from .engines import BlockSpace, ConjugateBlock, EuclideanBlock
from .errors import EmptyListError, InvalidToleranceError, NonPositiveModulusError
from .problems import FiniteSumProblem, require_valid
from .testbed import ExactSolution, quad_data
from .tracing import CountingSmoothOracle, OracleCounter, make_record

__all__ = [
    "FsState",
    "FsSchedule",
    "FsResult",
    "sampling_p",
    "lambda_fs",
    "fs_step",
    "fs_one_phase",
    "solve_finitesum",
    "potential_fs",
    "fs_lifted",
]


def sampling_p(smoothness) -> DiscreteDistribution:
    """Summand distribution p_i = sqrt(L_i) / (2 sum_j sqrt(L_j)) + 1/(2n).

    Guarantees every p_i >= 1/(2n) and sqrt(L_i)/p_i <= 2 sum_j sqrt(L_j).
    When every L_i is zero only the uniform floor survives (and the missing
    sqrt-mass is spread uniformly so the weights still sum to one).
    """
    ls = np.asarray(smoothness, dtype=np.float64)
    if ls.size == 0:
        raise EmptyListError("smoothness list is empty")
    if np.any(ls < 0):
        raise ValueError("smoothness constants must be non-negative")
    n = ls.size
    roots = np.sqrt(ls)
    total = roots.sum()
    if total > 0:
        w = roots / (2.0 * total) + 1.0 / (2 * n)
    else:
        w = np.full(n, 1.0 / n)
    return DiscreteDistribution(w / w.sum())


def lambda_fs(n: int, smoothness, mu: float) -> float:
    """Expected relative-Lipschitzness constant 2n + 2 sum_i sqrt(L_i) / sqrt(n mu)."""
    if mu <= 0:
        raise NonPositiveModulusError("mu must be positive")
    roots = np.sqrt(np.asarray(smoothness, dtype=np.float64))
    return 2.0 * n + 2.0 * float(roots.sum()) / math.sqrt(n * mu)


@dataclass
class FsSchedule:
    p: DiscreteDistribution
    lam: float
    phase_len: int  # S
    phases: int     # T

    @classmethod
    def for_problem(cls, problem: FiniteSumProblem, eps0: float, eps: float,
                    lam: float | None = None, phase_len: int | None = None,
                    phases: int | None = None) -> "FsSchedule":
        ls = problem.smoothness_list
        lam_val = lam if lam is not None else lambda_fs(problem.n, ls, problem.mu)
        s_val = phase_len if phase_len is not None else math.ceil(2.0 * lam_val)
        if phases is not None:
            t_val = phases
        else:
            if eps <= 0 or eps > eps0:
                raise InvalidToleranceError(f"need eps0 >= eps > 0, got {eps0}, {eps}")
            lbar = problem.mu + float(ls.mean())
            b0 = (1.0 + float(ls.sum()) / (problem.n * problem.mu)) * eps0
            bend = eps * problem.mu / lbar
            t_val = max(1, math.ceil(math.log2(max(b0 / bend, 1.0))))
        return cls(sampling_p(ls), lam_val, int(s_val), int(t_val))


@dataclass
class FsState:
    """Pre-image state with coherent gradient caches.

    grads[i] == grad f_i(wf[i]) always; grad_sum == grads.sum(axis=0).
    The phase loop mutates rows in place and updates grad_sum incrementally,
    keeping each iteration O(d).
    """

    wx: np.ndarray
    wf: np.ndarray       # (n, d) pre-images
    grads: np.ndarray    # (n, d) cached summand gradients
    grad_sum: np.ndarray

    @classmethod
    def at_point(cls, problem: FiniteSumProblem, x0: np.ndarray,
                 counter: OracleCounter | None = None) -> "FsState":
        n = problem.n
        x0 = np.asarray(x0, dtype=np.float64)
        wf = np.tile(x0, (n, 1))
        grads = np.empty_like(wf)
        for i, s in enumerate(problem.summands):
            oracle = s if counter is None else CountingSmoothOracle(s, counter, "f")
            grads[i] = oracle.gradient(x0)
        return cls(x0.copy(), wf, grads, grads.sum(axis=0))

    def copy(self) -> "FsState":
        return FsState(self.wx.copy(), self.wf.copy(), self.grads.copy(),
                       self.grad_sum.copy())

    def refresh(self, problem: FiniteSumProblem, counter: OracleCounter | None = None) -> None:
        """Recompute every cache row (n gradient calls)."""
        for i, s in enumerate(problem.summands):
            oracle = s if counter is None else CountingSmoothOracle(s, counter, "f")
            self.grads[i] = oracle.gradient(self.wf[i])
        self.grad_sum = self.grads.sum(axis=0)


def fs_step(problem: FiniteSumProblem, state: FsState, j: int, lam: float,
            p: DiscreteDistribution, counter: OracleCounter | None = None) -> np.ndarray:
    """One randomized extragradient iteration, in place; returns wx_half.

    The dual pre-image steps use coefficient 1/(lam * p_j): the 1/n in the
    sampled operator's dual block cancels against the 1/n weight its
    divergence carries, so this is the exact conjugate-space prox map.
    Exactly two gradient calls.
    """
    n, mu = problem.n, problem.mu
    oracle = problem.summands[j]
    if counter is not None:
        oracle = CountingSmoothOracle(oracle, counter, "f")
    pj = p.weights[j]
    c = 1.0 / (lam * pj)
    wx, mean_grad = state.wx, state.grad_sum / n

    wx_half = wx - (mu * wx + mean_grad) / (lam * mu)
    wfj_half = (1.0 - c) * state.wf[j] + c * wx
    delta = oracle.gradient(wfj_half) - state.grads[j]
    wx_next = wx - (mu * wx_half + mean_grad + delta / (n * pj)) / (lam * mu)
    wfj_next = state.wf[j] + c * (wx_half - wfj_half)

    state.wx = wx_next
    state.wf[j] = wfj_next
    new_grad = oracle.gradient(wfj_next)
    state.grad_sum = state.grad_sum + (new_grad - state.grads[j])
    state.grads[j] = new_grad
    return wx_half


def fs_aggregate_preimages(state_wx: np.ndarray, state_wf: np.ndarray, lam: float,
                           p: DiscreteDistribution) -> np.ndarray:
    """Every summand's would-be half-step pre-image from (wx, wf)."""
    c = 1.0 / (lam * p.weights)
    return (1.0 - c)[:, None] * state_wf + c[:, None] * state_wx


def fs_one_phase(problem: FiniteSumProblem, state: FsState, schedule: FsSchedule,
                 rng: SeededRng, counter: OracleCounter | None = None) -> tuple[FsState, int]:
    """Run sigma+1 iterations and restart at the aggregate point.

    Returns (new_state, sigma).  The aggregate combines the last half-step
    primal block with the would-be half-step pre-images of *all* summands
    taken from the state entering the final iteration; its caches are
    refreshed with n fresh gradients.
    """
    sigma = rng.randint(schedule.phase_len)
    wx_half = state.wx
    wx_sig = state.wx
    wfj_sig, j_sig = None, -1
    for s in range(sigma + 1):
        j = schedule.p.sample(rng)
        if s == sigma:
            wx_sig = state.wx.copy()
            wfj_sig, j_sig = state.wf[j].copy(), j
        wx_half = fs_step(problem, state, j, schedule.lam, schedule.p, counter)
    wf_sigma = state.wf.copy()
    if j_sig >= 0:
        wf_sigma[j_sig] = wfj_sig
    new_state = FsState(wx_half.copy(),
                        fs_aggregate_preimages(wx_sig, wf_sigma, schedule.lam, schedule.p),
                        np.empty_like(state.grads), np.empty_like(state.wx))
    new_state.refresh(problem, counter)
    return new_state, sigma


@dataclass
class FsResult:
    x: np.ndarray
    trace: list
    schedule: FsSchedule
    counter: OracleCounter
    state: FsState
    sigmas: list


def potential_fs(problem: FiniteSumProblem, state: FsState, sol: ExactSolution) -> float:
    """V^r from the state to the lifted solution (x*, {grad f_i(x*)})."""
    v = problem.mu * bregman_euclidean(state.wx, sol.x)
    for i, s in enumerate(problem.summands):
        v += conjugate_divergence(s, state.wf[i], sol.x) / problem.n
    return v


def solve_finitesum(problem: FiniteSumProblem, x0, *, eps0: float, eps: float,
                    seed: int = 0, lam: float | None = None,
                    phase_len: int | None = None, phases: int | None = None,
                    reference: ExactSolution | None = None) -> FsResult:
    """Initialize all pre-images at x0 and run the phase-restart schedule."""
    require_valid(problem)
    schedule = FsSchedule.for_problem(problem, eps0, eps, lam, phase_len, phases)
    rng = SeededRng(seed)
    counter = OracleCounter()
    t0 = time.monotonic_ns()
    state = FsState.at_point(problem, np.asarray(x0, dtype=np.float64), counter)

    trace = []
    sigmas = []

    def record(i, st):
        pot = potential_fs(problem, st, reference) if reference is not None else float("nan")
        sub = (problem.objective(st.wx) - problem.objective(reference.x)
               if reference is not None else float("nan"))
        trace.append(make_record(i, counter, pot, sub, t0))

    record(0, state)
    for t in range(1, schedule.phases + 1):
        state, sigma = fs_one_phase(problem, state, schedule, rng, counter)
        sigmas.append(sigma)
        record(t, state)
    return FsResult(state.wx.copy(), trace, schedule, counter, state, sigmas)


# ---------------------------------------------------------------------------
# lifted-space view (reference engine support)
# ---------------------------------------------------------------------------

def fs_lifted(problem: FiniteSumProblem):
    """Explicit lifted space plus the sampled-operator pair for the engine.

    Returns (space, estimator, estimator_aux) over flat vectors
    [x, dual_1, ..., dual_n]; requires invertible quadratic summands.
    """
    n, d, mu = problem.n, problem.dim, problem.mu
    blocks = [EuclideanBlock(d, mu)]
    for s in problem.summands:
        a_mat, a_vec = quad_data(s)
        blocks.append(ConjugateBlock(a_mat, a_vec, 1.0 / n))
    space = BlockSpace(blocks)
    p = sampling_p(problem.smoothness_list)

    def estimator(j, w):
        parts = space.split(w)
        wx, duals = parts[0], parts[1:]
        out = np.zeros_like(w)
        out[space.slices[0]] = mu * wx + sum(duals) / n
        conj = space.blocks[1 + j]
        out[space.slices[1 + j]] = (conj.grad_conjugate(duals[j]) - wx) / (n * p.weights[j])
        return out

    def estimator_aux(j, w, w_aux):
        parts = space.split(w)
        wx, duals = parts[0], parts[1:]
        parts_aux = space.split(w_aux)
        wx_aux, duals_aux = parts_aux[0], parts_aux[1:]
        out = np.zeros_like(w)
        out[space.slices[0]] = (mu * wx_aux + sum(duals) / n
                                + (duals_aux[j] - duals[j]) / (n * p.weights[j]))
        conj = space.blocks[1 + j]
        out[space.slices[1 + j]] = (conj.grad_conjugate(duals_aux[j]) - wx_aux) / (n * p.weights[j])
        return out

    return space, estimator, estimator_aux
