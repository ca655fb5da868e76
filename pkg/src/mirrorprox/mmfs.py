"""Minimax-finite-sum solver: proximal-point outer loop over a variance-reduced
randomized inner solver.

Each outer step solves (to expected-halving accuracy, N phases) the VI of the
gамma-regularized operator centered at the current iterate.  The inner phases
run randomized extragradient steps that sample four indices per iteration:
j (f-side, distribution p), k (g-side, q), and l, l' (coupling, r twice).
Coupling terms are variance-reduced against an anchor point whose full
coupling gradient is cached per phase; f/g dual blocks live as primal
pre-images exactly as in the finite-sum solver.

RNG draw order: per phase one integer for sigma, then per iteration the four
index draws j, k, l, l' in that order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .core import DiscreteDistribution, SeededRng, bregman_euclidean, conjugate_divergence
from .engines import BlockSpace, ConjugateBlock, EuclideanBlock
from .errors import InvalidToleranceError, NonPositiveModulusError
from .finitesum import sampling_p
from .problems import MinimaxFiniteSumProblem, require_valid
from .testbed import quad_data
from .tracing import CountingCoupling, CountingSmoothOracle, OracleCounter, make_record

__all__ = [
    "MmfsState",
    "AnchorCache",
    "MmfsSchedule",
    "MmfsResult",
    "lambda_h",
    "sampling_pqr",
    "schedule_mmfs",
    "mmfs_step",
    "mmfs_inner_phase",
    "mmfs_inner",
    "solve_mmfs",
    "potential_mmfs",
    "potential_mmfs_to",
    "mmfs_lifted",
]


def lambda_h(problem: MinimaxFiniteSumProblem) -> float:
    """Mean coupling measure (1/n) sum_i [Lxx_i/mux + Lxy_i/sqrt(mux muy) + Lyy_i/muy]."""
    if problem.mu_x <= 0 or problem.mu_y <= 0:
        raise NonPositiveModulusError("moduli must be positive")
    return float(problem.lam_tot_list().mean())


def sampling_pqr(problem: MinimaxFiniteSumProblem):
    """The three index distributions: p from sqrt(Lx), q from sqrt(Ly), r from
    the per-summand coupling measures, each floored at 1/(2n)."""
    p = sampling_p(problem.lx_list())
    q = sampling_p(problem.ly_list())
    lam_tot = problem.lam_tot_list()
    # same recipe; the weights are the coupling measures themselves
    if lam_tot.sum() > 0:
        w = lam_tot / (2.0 * lam_tot.sum()) + 1.0 / (2 * problem.n)
    else:
        w = np.full(problem.n, 1.0 / problem.n)
    r = DiscreteDistribution(w / w.sum())
    return p, q, r


@dataclass
class MmfsSchedule:
    gamma: float
    lam_h: float
    lam1: float
    rho: float
    lam: float
    phase_len: int   # S
    inner_phases: int  # N
    outer_steps: int   # T
    p: DiscreteDistribution
    q: DiscreteDistribution
    r: DiscreteDistribution


def schedule_mmfs(problem: MinimaxFiniteSumProblem, eps0: float, eps: float, *,
                  gamma: float | None = None, lam: float | None = None,
                  phase_len: int | None = None, inner_phases: int | None = None,
                  outer_steps: int | None = None) -> MmfsSchedule:
    """All derived run parameters for the outer/inner loops.

    gamma = max(1, lam_h/sqrt(n)); lambda adds the separable, cross, coupling
    and partial-variance terms; S = ceil(5 lambda / gamma); N targets the
    kappa-tilde accuracy of the proximal subproblem by halving; T comes from
    the outer contraction factor 4g/(1+4g) with initial/terminal constants
    analogous to the separable-minimax budget.
    """
    n = problem.n
    mu_x, mu_y = problem.mu_x, problem.mu_y
    lx, ly = problem.lx_list(), problem.ly_list()
    lh = lambda_h(problem)
    g = gamma if gamma is not None else max(1.0, lh / math.sqrt(n))
    if g < 1.0:
        raise InvalidToleranceError("gamma must be >= 1")
    lam1 = 32.0 * lh ** 2
    rho = g / (5.0 * lam1) if lam1 > 0 else math.inf
    lam_val = lam if lam is not None else (
        2.0 * n * (1.0 + g)
        + 2.0 * float(np.sqrt(lx).sum()) / math.sqrt(n * mu_x)
        + 2.0 * float(np.sqrt(ly).sum()) / math.sqrt(n * mu_y)
        + 2.0 * lh + 160.0 * lh ** 2 / g)
    s_val = phase_len if phase_len is not None else math.ceil(5.0 * lam_val / g)

    if inner_phases is not None:
        n_val = inner_phases
    else:
        root = math.sqrt(mu_x * mu_y)
        per = np.array([(f.smoothness + h.lip_xx) / mu_x + (gg.smoothness + h.lip_yy) / mu_y
                        + h.lip_xy / root
                        for f, gg, h in zip(problem.fs, problem.gs, problem.hs)])
        kappa_tilde = 10.0 * float((per ** 2).sum())
        n_val = math.ceil(math.log2(1.0 + 3.0 * g * kappa_tilde)) + 1

    if outer_steps is not None:
        t_val = outer_steps
    else:
        if eps <= 0 or eps > eps0:
            raise InvalidToleranceError(f"need eps0 >= eps > 0, got {eps0}, {eps}")
        b0 = (1.0 + float(lx.sum()) / (n * mu_x) + float(ly.sum()) / (n * mu_y)) * eps0
        lxbar, lybar = float(lx.mean()), float(ly.mean())
        lam_tot = problem.lam_tot_list()
        lxx_bar = float(np.mean([h.lip_xx for h in problem.hs]))
        lyy_bar = float(np.mean([h.lip_yy for h in problem.hs]))
        lxy_bar = float(np.mean([h.lip_xy for h in problem.hs]))
        denom = ((mu_x + lxbar + lxx_bar) / mu_x + (mu_y + lybar + lyy_bar) / mu_y
                 + lxy_bar ** 2 / (mu_x * mu_y))
        bend = 0.5 * eps / denom
        contraction = math.log((1.0 + 4.0 * g) / (4.0 * g))
        t_val = max(1, math.ceil(math.log(max(b0 / bend, 1.0)) / contraction))
        del lam_tot

    p, q, r = sampling_pqr(problem)
    return MmfsSchedule(g, lh, lam1, rho, lam_val, int(s_val), int(n_val), int(t_val), p, q, r)


@dataclass
class MmfsState:
    """Pre-image state for both sides, with coherent gradient caches."""

    wx: np.ndarray
    wy: np.ndarray
    wf: np.ndarray      # (n, dx)
    wg: np.ndarray      # (n, dy)
    fgrads: np.ndarray
    fsum: np.ndarray
    ggrads: np.ndarray
    gsum: np.ndarray

    @classmethod
    def at_point(cls, problem: MinimaxFiniteSumProblem, x0, y0,
                 counter: OracleCounter | None = None) -> "MmfsState":
        x0 = np.asarray(x0, dtype=np.float64)
        y0 = np.asarray(y0, dtype=np.float64)
        n = problem.n
        wf = np.tile(x0, (n, 1))
        wg = np.tile(y0, (n, 1))
        fgrads = np.empty_like(wf)
        ggrads = np.empty_like(wg)
        for i in range(n):
            fo = problem.fs[i] if counter is None else CountingSmoothOracle(problem.fs[i], counter, "f")
            go = problem.gs[i] if counter is None else CountingSmoothOracle(problem.gs[i], counter, "g")
            fgrads[i] = fo.gradient(x0)
            ggrads[i] = go.gradient(y0)
        return cls(x0.copy(), y0.copy(), wf, wg, fgrads, fgrads.sum(axis=0),
                   ggrads, ggrads.sum(axis=0))

    def copy(self) -> "MmfsState":
        return MmfsState(self.wx.copy(), self.wy.copy(), self.wf.copy(), self.wg.copy(),
                         self.fgrads.copy(), self.fsum.copy(),
                         self.ggrads.copy(), self.gsum.copy())

    def refresh(self, problem: MinimaxFiniteSumProblem,
                counter: OracleCounter | None = None) -> None:
        for i in range(problem.n):
            fo = problem.fs[i] if counter is None else CountingSmoothOracle(problem.fs[i], counter, "f")
            go = problem.gs[i] if counter is None else CountingSmoothOracle(problem.gs[i], counter, "g")
            self.fgrads[i] = fo.gradient(self.wf[i])
            self.ggrads[i] = go.gradient(self.wg[i])
        self.fsum = self.fgrads.sum(axis=0)
        self.gsum = self.ggrads.sum(axis=0)


@dataclass
class AnchorCache:
    """Per-summand coupling gradients at the phase anchor, plus their means.

    phi_x is the x block of the anchored coupling operator (mean of grad_x);
    the y block is minus the mean of grad_y, stored here unsigned as mean_hy.
    """

    hx: np.ndarray      # (n, dx) raw grad_x h_i(w0)
    hy: np.ndarray      # (n, dy) raw grad_y h_i(w0)
    phi_x: np.ndarray
    mean_hy: np.ndarray

    @classmethod
    def at_state(cls, problem: MinimaxFiniteSumProblem, state: MmfsState,
                 counter: OracleCounter | None = None) -> "AnchorCache":
        n = problem.n
        hx = np.empty((n, problem.dim_x))
        hy = np.empty((n, problem.dim_y))
        for i, h in enumerate(problem.hs):
            ho = h if counter is None else CountingCoupling(h, counter)
            hx[i] = ho.grad_x(state.wx, state.wy)
            hy[i] = ho.grad_y(state.wx, state.wy)
        return cls(hx, hy, hx.mean(axis=0), hy.mean(axis=0))


def mmfs_step(problem: MinimaxFiniteSumProblem, anchor: AnchorCache, center: MmfsState,
              state: MmfsState, indices, schedule: MmfsSchedule,
              counter: OracleCounter | None = None) -> tuple[np.ndarray, np.ndarray]:
    """One inner iteration, in place; returns (wx_half, wy_half).

    ``center`` is the proximal center (the outer iterate).  Exactly two
    f-gradients, two g-gradients, and four coupling block gradients.  The
    dual pre-image steps use 1/(lam p_j) and 1/(lam q_k): the sampled
    operator's 1/n cancels the 1/n divergence weight, as in the finite-sum
    solver.
    """
    j, k, l, lp = indices
    n = problem.n
    g = schedule.gamma
    lam = schedule.lam
    mu_x, mu_y = problem.mu_x, problem.mu_y
    fo = problem.fs[j] if counter is None else CountingSmoothOracle(problem.fs[j], counter, "f")
    go = problem.gs[k] if counter is None else CountingSmoothOracle(problem.gs[k], counter, "g")
    hl = problem.hs[l] if counter is None else CountingCoupling(problem.hs[l], counter)
    hlp = problem.hs[lp] if counter is None else CountingCoupling(problem.hs[lp], counter)
    cj = 1.0 / (lam * schedule.p.weights[j])
    dk = 1.0 / (lam * schedule.q.weights[k])
    rl = n * schedule.r.weights[l]
    rlp = n * schedule.r.weights[lp]
    wx, wy = state.wx, state.wy

    phi_x = (anchor.phi_x + (hl.grad_x(wx, wy) - anchor.hx[l]) / rl
             + (1.0 + g) * mu_x * wx - g * mu_x * center.wx + state.fsum / n)
    phi_y = (-anchor.mean_hy - (hl.grad_y(wx, wy) - anchor.hy[l]) / rl
             + (1.0 + g) * mu_y * wy - g * mu_y * center.wy + state.gsum / n)
    wx_half = wx - phi_x / (lam * mu_x)
    wy_half = wy - phi_y / (lam * mu_y)
    wfj_half = state.wf[j] - cj * ((1.0 + g) * state.wf[j] - g * center.wf[j] - wx)
    wgk_half = state.wg[k] - dk * ((1.0 + g) * state.wg[k] - g * center.wg[k] - wy)

    gf_half = fo.gradient(wfj_half)
    gg_half = go.gradient(wgk_half)
    phi_x = (anchor.phi_x + (hlp.grad_x(wx_half, wy_half) - anchor.hx[lp]) / rlp
             + (1.0 + g) * mu_x * wx_half - g * mu_x * center.wx
             + state.fsum / n + (gf_half - state.fgrads[j]) / (n * schedule.p.weights[j]))
    phi_y = (-anchor.mean_hy - (hlp.grad_y(wx_half, wy_half) - anchor.hy[lp]) / rlp
             + (1.0 + g) * mu_y * wy_half - g * mu_y * center.wy
             + state.gsum / n + (gg_half - state.ggrads[k]) / (n * schedule.q.weights[k]))
    wx_next = wx - phi_x / (lam * mu_x)
    wy_next = wy - phi_y / (lam * mu_y)
    wfj_next = state.wf[j] - cj * ((1.0 + g) * wfj_half - g * center.wf[j] - wx_half)
    wgk_next = state.wg[k] - dk * ((1.0 + g) * wgk_half - g * center.wg[k] - wy_half)

    state.wx, state.wy = wx_next, wy_next
    state.wf[j], state.wg[k] = wfj_next, wgk_next
    gf_new = fo.gradient(wfj_next)
    gg_new = go.gradient(wgk_next)
    state.fsum = state.fsum + (gf_new - state.fgrads[j])
    state.gsum = state.gsum + (gg_new - state.ggrads[k])
    state.fgrads[j] = gf_new
    state.ggrads[k] = gg_new
    return wx_half, wy_half


def rebase_preimages(w_rows: np.ndarray, center_rows: np.ndarray, w_primal: np.ndarray,
                     weights: np.ndarray, lam: float, gamma: float) -> np.ndarray:
    """Would-be half-step pre-images for every summand (aggregate point)."""
    c = (1.0 / (lam * weights))[:, None]
    return w_rows - c * ((1.0 + gamma) * w_rows - gamma * center_rows - w_primal[None, :])


def mmfs_inner_phase(problem: MinimaxFiniteSumProblem, anchor: AnchorCache,
                     center: MmfsState, state: MmfsState, schedule: MmfsSchedule,
                     rng: SeededRng, counter: OracleCounter | None = None):
    """One phase: sigma+1 iterations, then restart at the aggregate point.

    Returns (new_state, new_anchor, sigma).  The aggregate takes the last
    half-step primal blocks and rebases *all* dual pre-images from the state
    entering the final iteration; caches and the anchor are then recomputed.
    """
    sigma = rng.randint(schedule.phase_len)
    wx_half, wy_half = state.wx, state.wy
    snap = None
    for s in range(sigma + 1):
        j = schedule.p.sample(rng)
        k = schedule.q.sample(rng)
        l = schedule.r.sample(rng)
        lp = schedule.r.sample(rng)
        if s == sigma:
            snap = (state.wx.copy(), state.wy.copy(), j, state.wf[j].copy(),
                    k, state.wg[k].copy())
        wx_half, wy_half = mmfs_step(problem, anchor, center, state, (j, k, l, lp),
                                     schedule, counter)
    wx_s, wy_s, j_s, wfj_s, k_s, wgk_s = snap
    wf_sigma = state.wf.copy()
    wf_sigma[j_s] = wfj_s
    wg_sigma = state.wg.copy()
    wg_sigma[k_s] = wgk_s
    new_state = MmfsState(
        wx_half.copy(), wy_half.copy(),
        rebase_preimages(wf_sigma, center.wf, wx_s, schedule.p.weights,
                         schedule.lam, schedule.gamma),
        rebase_preimages(wg_sigma, center.wg, wy_s, schedule.q.weights,
                         schedule.lam, schedule.gamma),
        np.empty_like(state.fgrads), np.empty_like(state.fsum),
        np.empty_like(state.ggrads), np.empty_like(state.gsum))
    new_state.refresh(problem, counter)
    new_anchor = AnchorCache.at_state(problem, new_state, counter)
    return new_state, new_anchor, sigma


def mmfs_inner(problem: MinimaxFiniteSumProblem, center: MmfsState,
               schedule: MmfsSchedule, rng: SeededRng,
               counter: OracleCounter | None = None,
               inner_phases: int | None = None):
    """Approximately solve one gamma-regularized proximal subproblem.

    Runs N successive halving phases from w0 = center.  Returns
    (state, sigmas); with N = 0 the center is returned unchanged.
    """
    n_phases = schedule.inner_phases if inner_phases is None else inner_phases
    sigmas = []
    if n_phases == 0:
        return center.copy(), sigmas
    state = center.copy()
    anchor = AnchorCache.at_state(problem, state, counter)
    for _ in range(n_phases):
        state, anchor, sigma = mmfs_inner_phase(problem, anchor, center, state,
                                                schedule, rng, counter)
        sigmas.append(sigma)
    return state, sigmas


@dataclass
class MmfsResult:
    x: np.ndarray
    y: np.ndarray
    trace: list
    schedule: MmfsSchedule
    counter: OracleCounter
    state: MmfsState
    sigmas: list  # per outer step, list of per-phase sigmas


def potential_mmfs(problem: MinimaxFiniteSumProblem, state: MmfsState, sol) -> float:
    """V^r from the state to the lifted saddle (x*, y*, {grad f_i(x*)}, ...)."""
    n = problem.n
    v = (problem.mu_x * bregman_euclidean(state.wx, sol.x)
         + problem.mu_y * bregman_euclidean(state.wy, sol.y))
    for i in range(n):
        v += conjugate_divergence(problem.fs[i], state.wf[i], sol.x) / n
        v += conjugate_divergence(problem.gs[i], state.wg[i], sol.y) / n
    return v


def potential_mmfs_to(problem: MinimaxFiniteSumProblem, state: MmfsState,
                      x, y, uf, ug) -> float:
    """V^r to an arbitrary lifted point given by its pre-images (uf, ug)."""
    n = problem.n
    v = (problem.mu_x * bregman_euclidean(state.wx, x)
         + problem.mu_y * bregman_euclidean(state.wy, y))
    for i in range(n):
        v += conjugate_divergence(problem.fs[i], state.wf[i], uf[i]) / n
        v += conjugate_divergence(problem.gs[i], state.wg[i], ug[i]) / n
    return v


def solve_mmfs(problem: MinimaxFiniteSumProblem, x0, y0, *, eps0: float, eps: float,
               seed: int = 0, gamma: float | None = None, lam: float | None = None,
               phase_len: int | None = None, inner_phases: int | None = None,
               outer_steps: int | None = None, reference=None, gap_fn=None) -> MmfsResult:
    """Outer proximal-point loop; returns the final primal pair (x, y)."""
    require_valid(problem)
    schedule = schedule_mmfs(problem, eps0, eps, gamma=gamma, lam=lam,
                             phase_len=phase_len, inner_phases=inner_phases,
                             outer_steps=outer_steps)
    rng = SeededRng(seed)
    counter = OracleCounter()
    t0 = time.monotonic_ns()
    state = MmfsState.at_point(problem, x0, y0, counter)

    trace = []
    all_sigmas = []

    def record(i, st):
        pot = potential_mmfs(problem, st, reference) if reference is not None else float("nan")
        gap = gap_fn(st.wx, st.wy) if gap_fn is not None else float("nan")
        trace.append(make_record(i, counter, pot, gap, t0))

    record(0, state)
    for t in range(1, schedule.outer_steps + 1):
        state, sigmas = mmfs_inner(problem, state, schedule, rng, counter)
        all_sigmas.append(sigmas)
        record(t, state)
    return MmfsResult(state.wx.copy(), state.wy.copy(), trace, schedule, counter,
                      state, all_sigmas)


# ---------------------------------------------------------------------------
# lifted-space view (reference engine support)
# ---------------------------------------------------------------------------

def mmfs_lifted(problem: MinimaxFiniteSumProblem, center: MmfsState,
                anchor_xy: tuple[np.ndarray, np.ndarray], schedule: MmfsSchedule):
    """Explicit estimator pair over flat [x, y, duals_f..., duals_g...].

    ``center`` is the proximal center; ``anchor_xy`` the phase anchor's
    primal blocks (its coupling gradients are recomputed here explicitly).
    Requires invertible quadratic summands on both sides.
    """
    n = problem.n
    dx, dy = problem.dim_x, problem.dim_y
    g = schedule.gamma
    blocks = [EuclideanBlock(dx, problem.mu_x), EuclideanBlock(dy, problem.mu_y)]
    for f in problem.fs:
        blocks.append(ConjugateBlock(*quad_data(f), 1.0 / n))
    for gg in problem.gs:
        blocks.append(ConjugateBlock(*quad_data(gg), 1.0 / n))
    space = BlockSpace(blocks)
    ax, ay = anchor_xy
    hx0 = np.stack([h.grad_x(ax, ay) for h in problem.hs])
    hy0 = np.stack([h.grad_y(ax, ay) for h in problem.hs])
    phi_hx0, mean_hy0 = hx0.mean(axis=0), hy0.mean(axis=0)
    pw, qw, rw = schedule.p.weights, schedule.q.weights, schedule.r.weights

    def split(w):
        parts = space.split(w)
        return parts[0], parts[1], parts[2:2 + n], parts[2 + n:]

    def estimator(idx, w):
        j, k, l, lp = idx
        wx, wy, df, dg = split(w)
        out = np.zeros_like(w)
        hs = problem.hs[l]
        out[space.slices[0]] = (phi_hx0 + (hs.grad_x(wx, wy) - hx0[l]) / (n * rw[l])
                                + (1 + g) * problem.mu_x * wx - g * problem.mu_x * center.wx
                                + sum(df) / n)
        out[space.slices[1]] = (-mean_hy0 - (hs.grad_y(wx, wy) - hy0[l]) / (n * rw[l])
                                + (1 + g) * problem.mu_y * wy - g * problem.mu_y * center.wy
                                + sum(dg) / n)
        cf = space.blocks[2 + j]
        out[space.slices[2 + j]] = ((1 + g) * cf.grad_conjugate(df[j]) - g * center.wf[j]
                                    - wx) / (n * pw[j])
        cg = space.blocks[2 + n + k]
        out[space.slices[2 + n + k]] = ((1 + g) * cg.grad_conjugate(dg[k]) - g * center.wg[k]
                                        - wy) / (n * qw[k])
        return out

    def estimator_aux(idx, w, w_aux):
        j, k, l, lp = idx
        wx, wy, df, dg = split(w)
        ax_, ay_, df_a, dg_a = split(w_aux)
        out = np.zeros_like(w)
        hs = problem.hs[lp]
        out[space.slices[0]] = (phi_hx0 + (hs.grad_x(ax_, ay_) - hx0[lp]) / (n * rw[lp])
                                + (1 + g) * problem.mu_x * ax_ - g * problem.mu_x * center.wx
                                + sum(df) / n + (df_a[j] - df[j]) / (n * pw[j]))
        out[space.slices[1]] = (-mean_hy0 - (hs.grad_y(ax_, ay_) - hy0[lp]) / (n * rw[lp])
                                + (1 + g) * problem.mu_y * ay_ - g * problem.mu_y * center.wy
                                + sum(dg) / n + (dg_a[k] - dg[k]) / (n * qw[k]))
        cf = space.blocks[2 + j]
        out[space.slices[2 + j]] = ((1 + g) * cf.grad_conjugate(df_a[j]) - g * center.wf[j]
                                    - ax_) / (n * pw[j])
        cg = space.blocks[2 + n + k]
        out[space.slices[2 + n + k]] = ((1 + g) * cg.grad_conjugate(dg_a[k]) - g * center.wg[k]
                                        - ay_) / (n * qw[k])
        return out

    def lift(state: MmfsState) -> np.ndarray:
        duals_f = [problem.fs[i].gradient(state.wf[i]) for i in range(n)]
        duals_g = [problem.gs[i].gradient(state.wg[i]) for i in range(n)]
        return np.concatenate([state.wx, state.wy] + duals_f + duals_g)

    return space, estimator, estimator_aux, lift
