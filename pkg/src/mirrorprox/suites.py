"""Registered invariant suites: the verifiable claims behind the solvers.

Each suite samples (or exhaustively enumerates, where a claim is an exact
expectation identity) the corresponding inequality and reports the worst
violation observed, normalized by the scale of the quantities involved.
``verify --suite all --seeds N`` runs every suite; a suite passes when its
worst violation stays within its stated tolerance.

Inequality checks use algorithm-realizable points throughout: dual blocks
are gradients at sampled pre-images, never free vectors, except for the
"for all u" slots of the expectation identities where arbitrary duals are
legal and exercised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DiscreteDistribution, SeededRng, bregman_euclidean, conjugate_divergence
from .errors import UnknownSuiteError
from .finitesum import (FsSchedule, FsState, fs_one_phase, fs_step, lambda_fs,
                        potential_fs, sampling_p)
from .minimax import MinimaxState, lambda_mm, mm_step, potential_mm
from .mmfs import (AnchorCache, MmfsState, mmfs_inner, mmfs_inner_phase, mmfs_step,
                   potential_mmfs, potential_mmfs_to, schedule_mmfs)
from .oracles import QuadraticOracle, TiltedOracle
from .problems import FiniteSumProblem
from .reductions import redx_convex, redx_minimax, shifted_fs_subproblem, shifted_mmfs_subproblem
from .testbed import (exact_min, exact_saddle, gen_quadratic_finitesum,
                      gen_quadratic_minimax, gen_quadratic_mmfs, mmfs_prox_vi_solution,
                      quad_data)

__all__ = ["SuiteReport", "SUITE_NAMES", "run_suite", "run_all"]


@dataclass
class SuiteReport:
    name: str
    passed: bool
    max_violation: float
    tolerance: float
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return (f"{self.name:26s} {status}  worst={self.max_violation:.3e}  "
                f"tol={self.tolerance:.1e}  {self.detail}")


def _report(name, violations, tol, detail="") -> SuiteReport:
    worst = float(np.max(violations)) if len(violations) else 0.0
    return SuiteReport(name, worst <= tol, worst, tol, detail)


# ---------------------------------------------------------------------------
# core-math suites
# ---------------------------------------------------------------------------

def suite_bregman(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(0)
    viol = []
    for _ in range(seeds):
        d = int(rng.integers(1, 8))
        x, y = rng.standard_normal(d), rng.standard_normal(d)
        v = bregman_euclidean(x, y)
        viol.append(max(-v, abs(v - bregman_euclidean(y, x))))
        viol.append(abs(bregman_euclidean(x, x)))
    return _report("bregman", viol, 1e-14, "nonneg/symmetry/zero-at-identity")


def suite_three_point(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(1)
    viol = []
    for _ in range(seeds):
        d = int(rng.integers(1, 8))
        wts = np.exp(rng.uniform(-1, 3, d))
        w, z, u = (rng.standard_normal(d) for _ in range(3))

        def div(a, b):
            return 0.5 * float((b - a) @ (wts * (b - a)))

        lhs = float((wts * (w - z)) @ (w - u))
        rhs = div(z, w) + div(w, u) - div(z, u)
        viol.append(abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return _report("three-point", viol, 1e-10, "weighted-Euclidean identity")


def suite_conjugate_divergence(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(2)
    viol = []
    for _ in range(seeds):
        d = int(rng.integers(1, 6))
        diag = np.exp(rng.uniform(-1, 2, d))
        f = QuadraticOracle(diag, rng.standard_normal(d))
        u, v = rng.standard_normal(d), rng.standard_normal(d)
        via_primal = conjugate_divergence(f, u, v)
        pu, pv = f.gradient(u), f.gradient(v)
        direct = (f.conjugate_value(pv) - f.conjugate_value(pu)
                  - float(f.conjugate_gradient(pu) @ (pv - pu)))
        viol.append(abs(via_primal - direct) / max(1.0, abs(direct)))
        viol.append(max(0.0, -via_primal))
    return _report("conjugate-divergence", viol, 1e-10, "primal route vs explicit f*")


def suite_rng_repro(seeds: int) -> SuiteReport:
    viol = []
    for s in range(min(seeds, 20)):
        a, b = SeededRng(s), SeededRng(s)
        seq_a = [a.uniform() for _ in range(100)] + [float(a.randint(17)) for _ in range(20)]
        seq_b = [b.uniform() for _ in range(100)] + [float(b.randint(17)) for _ in range(20)]
        viol.append(0.0 if seq_a == seq_b else 1.0)
    return _report("rng-repro", viol, 0.0, "bitwise-identical streams")


def suite_sampling(seeds: int) -> SuiteReport:
    dist = DiscreteDistribution([0.375, 0.625])
    viol = [abs(dist.index_for(0.4) - 1)]
    rng = SeededRng(3)
    draws = np.array([dist.sample(rng) for _ in range(100_000)])
    freq = np.array([(draws == i).mean() for i in range(2)])
    viol.append(float(np.max(np.abs(freq - dist.weights))) - 0.01)
    return _report("sampling", viol, 0.0, "inverse-CDF index + Monte-Carlo freq")


# ---------------------------------------------------------------------------
# oracle suites
# ---------------------------------------------------------------------------

def suite_grad_consistency(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(4)
    viol = []
    for _ in range(max(1, seeds // 20)):
        d = int(rng.integers(1, 5))
        f = QuadraticOracle(np.exp(rng.uniform(-1, 2, d)), rng.standard_normal(d))
        f2 = TiltedOracle(f, 0.5, rng.standard_normal(d))
        for oracle in (f, f2):
            for _ in range(20):
                x = rng.standard_normal(d)
                g = oracle.gradient(x)
                fd = np.empty(d)
                for i in range(d):
                    e = np.zeros(d)
                    e[i] = 1e-5
                    fd[i] = (oracle.value(x + e) - oracle.value(x - e)) / 2e-5
                viol.append(float(np.linalg.norm(fd - g))
                            / max(1.0, float(np.linalg.norm(g))))
    return _report("grad-consistency", viol, 1e-5, "central differences, step 1e-5")


def suite_conjugate_facts(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(5)
    viol = []
    for _ in range(seeds):
        d = int(rng.integers(1, 5))
        diag = np.exp(rng.uniform(-1, 2, d))
        mu, lmax = float(diag.min()), float(diag.max())
        f = QuadraticOracle(diag, rng.standard_normal(d))
        x, x2 = rng.standard_normal(d), rng.standard_normal(d)
        p, p2 = f.gradient(x), f.gradient(x2)
        # grad f*(grad f(x)) = x
        viol.append(float(np.linalg.norm(f.conjugate_gradient(p) - x)) - 1e-9)
        # Fenchel equality at gradient pairs
        viol.append(abs(f.value(x) + f.conjugate_value(p) - float(p @ x))
                    / max(1.0, abs(f.value(x))) - 1e-9)
        # smoothness lower bound on the divergence
        div = conjugate_divergence(f, x2, x)
        viol.append(float((p2 - p) @ (p2 - p)) / (2 * lmax) - div - 1e-12)
        # dual smoothness: grad f* is (1/mu)-Lipschitz
        viol.append(float(np.linalg.norm(f.conjugate_gradient(p) - f.conjugate_gradient(p2)))
                    - float(np.linalg.norm(p - p2)) / mu - 1e-9)
    return _report("conjugate-facts", viol, 1e-9, "inversion/Fenchel/dual smoothness")


def suite_monotone_ops(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(6)
    prob = gen_quadratic_minimax(3, 2, cond_x=5, cond_y=7, lam_targets=(0.5, 1.0, 0.4),
                                 seed=8)
    viol = []
    for _ in range(seeds):
        x, x2 = rng.standard_normal(3), rng.standard_normal(3)
        y, y2 = rng.standard_normal(2), rng.standard_normal(2)
        # gradient of a convex function is monotone
        viol.append(-float((prob.f.gradient(x) - prob.f.gradient(x2)) @ (x - x2)))
        # convex-concave coupling operator is monotone
        ip = (float((prob.h.grad_x(x, y) - prob.h.grad_x(x2, y2)) @ (x - x2))
              - float((prob.h.grad_y(x, y) - prob.h.grad_y(x2, y2)) @ (y - y2)))
        viol.append(-ip)
        # gradient is 1-strongly monotone with respect to its own function
        sym = conjugate_divergence(prob.f, x, x2) + conjugate_divergence(prob.f, x2, x)
        viol.append(sym - float((prob.f.gradient(x) - prob.f.gradient(x2)) @ (x - x2)))
    return _report("monotone-ops", viol, 1e-9, "monotonicity + self strong monotonicity")


def suite_best_response(seeds: int) -> SuiteReport:
    from .testbed import _mm_blocks  # quadratic best responses

    rng = np.random.default_rng(7)
    prob = gen_quadratic_minimax(3, 2, cond_x=6, cond_y=3, lam_targets=(0.8, 1.5, 0.6),
                                 seed=9)
    mx, my, c_mat, rx, ry = _mm_blocks(prob)
    lips = prob.h
    lx_eff = (prob.mu_x + prob.f.smoothness + lips.lip_xx + lips.lip_xy ** 2 / prob.mu_y)
    ly_eff = (prob.mu_y + prob.g.smoothness + lips.lip_yy + lips.lip_xy ** 2 / prob.mu_x)
    my_inv = np.linalg.inv(my)
    mx_inv = np.linalg.inv(mx)
    viol = []
    for _ in range(seeds):
        x1, x2 = rng.standard_normal(3), rng.standard_normal(3)
        y1, y2 = rng.standard_normal(2), rng.standard_normal(2)

        def grad_br_x(x):
            ybest = my_inv @ (c_mat @ x - ry)
            return mx @ x + rx + c_mat.T @ ybest

        def grad_br_y(y):
            xbest = mx_inv @ (-(rx + c_mat.T @ y))
            return my @ y + ry - c_mat @ xbest

        viol.append(float(np.linalg.norm(grad_br_x(x1) - grad_br_x(x2)))
                    - lx_eff * float(np.linalg.norm(x1 - x2)) - 1e-9)
        viol.append(float(np.linalg.norm(grad_br_y(y1) - grad_br_y(y2)))
                    - ly_eff * float(np.linalg.norm(y1 - y2)) - 1e-9)
        # strong convexity of the best response
        viol.append(prob.mu_x * float(np.linalg.norm(x1 - x2)) ** 2
                    - float((grad_br_x(x1) - grad_br_x(x2)) @ (x1 - x2)))
    return _report("best-response", viol, 1e-9, "envelope smoothness bounds")


# ---------------------------------------------------------------------------
# minimax suites (lifted pre-image algebra)
# ---------------------------------------------------------------------------

def _mm_phi(problem, st: MinimaxState):
    """Operator blocks at a pre-image point: (x, y, dual_f, dual_g) blocks."""
    return (problem.mu_x * st.zx + problem.f.gradient(st.zf) + problem.h.grad_x(st.zx, st.zy),
            problem.mu_y * st.zy + problem.g.gradient(st.zg) - problem.h.grad_y(st.zx, st.zy),
            st.zf - st.zx,
            st.zg - st.zy)


def _mm_duals(problem, st: MinimaxState):
    return problem.f.gradient(st.zf), problem.g.gradient(st.zg)


def _mm_inner(problem, phi, a: MinimaxState, b: MinimaxState) -> float:
    """<phi, a - b> with dual blocks realized as gradients."""
    da_f, da_g = _mm_duals(problem, a)
    db_f, db_g = _mm_duals(problem, b)
    return (float(phi[0] @ (a.zx - b.zx)) + float(phi[1] @ (a.zy - b.zy))
            + float(phi[2] @ (da_f - db_f)) + float(phi[3] @ (da_g - db_g)))


def _mm_div(problem, a: MinimaxState, b: MinimaxState) -> float:
    """V^r_a(b) in pre-image form."""
    return (problem.mu_x * bregman_euclidean(a.zx, b.zx)
            + problem.mu_y * bregman_euclidean(a.zy, b.zy)
            + conjugate_divergence(problem.f, a.zf, b.zf)
            + conjugate_divergence(problem.g, a.zg, b.zg))


def _random_mm_state(rng, dx, dy) -> MinimaxState:
    return MinimaxState(rng.standard_normal(dx), rng.standard_normal(dy),
                        rng.standard_normal(dx), rng.standard_normal(dy))


def _mm_suite_problem():
    return gen_quadratic_minimax(3, 2, cond_x=8, cond_y=5, lam_targets=(0.7, 1.3, 0.5),
                                 seed=10)


def suite_rel_lipschitz_mm(seeds: int) -> SuiteReport:
    prob = _mm_suite_problem()
    lam = lambda_mm(prob.f.smoothness, prob.mu_x, prob.g.smoothness, prob.mu_y,
                    prob.h.lip_xx, prob.h.lip_xy, prob.h.lip_yy)
    rng = np.random.default_rng(11)
    viol = []
    for _ in range(10 * seeds):
        z, w, u = (_random_mm_state(rng, 3, 2) for _ in range(3))
        dphi = tuple(a - b for a, b in zip(_mm_phi(prob, w), _mm_phi(prob, z)))
        lhs = _mm_inner(prob, dphi, w, u)
        rhs = lam * (_mm_div(prob, z, w) + _mm_div(prob, w, u))
        viol.append((lhs - rhs) / max(1.0, abs(lhs), rhs))
    return _report("rel-lipschitz-mm", viol, 1e-9, f"lambda={lam:.3f}, {10*seeds} triples")


def suite_nabla_r_rl(seeds: int) -> SuiteReport:
    prob = _mm_suite_problem()
    rng = np.random.default_rng(12)
    viol = []
    for _ in range(10 * seeds):
        z, w, u = (_random_mm_state(rng, 3, 2) for _ in range(3))
        nabla_r = (prob.mu_x * w.zx, prob.mu_y * w.zy, w.zf, w.zg)
        nabla_rz = (prob.mu_x * z.zx, prob.mu_y * z.zy, z.zf, z.zg)
        dphi = tuple(a - b for a, b in zip(nabla_r, nabla_rz))
        lhs = _mm_inner(prob, dphi, w, u)
        rhs = _mm_div(prob, z, w) + _mm_div(prob, w, u)
        viol.append((lhs - rhs) / max(1.0, abs(lhs), rhs))
    return _report("nabla-r-rl", viol, 1e-9, "gradient of r is 1-relatively Lipschitz")


def suite_strong_monotone_mm(seeds: int) -> SuiteReport:
    prob = _mm_suite_problem()
    rng = np.random.default_rng(13)
    viol = []
    for _ in range(10 * seeds):
        z, z2 = _random_mm_state(rng, 3, 2), _random_mm_state(rng, 3, 2)
        dphi = tuple(a - b for a, b in zip(_mm_phi(prob, z), _mm_phi(prob, z2)))
        lhs = _mm_inner(prob, dphi, z, z2)
        rhs = _mm_div(prob, z, z2) + _mm_div(prob, z2, z)
        viol.append((rhs - lhs) / max(1.0, abs(lhs), rhs))
    return _report("strong-monotone-mm", viol, 1e-9, "modulus 1 w.r.t. r")


def suite_contraction_mm(seeds: int) -> SuiteReport:
    viol = []
    steps = max(50, min(200, 2 * seeds))
    for seed in range(5):
        prob = gen_quadratic_minimax(6, 6, cond_x=100, cond_y=30,
                                     lam_targets=(0.0, 2.0, 0.0), seed=20 + seed)
        sol = exact_saddle(prob)
        lam = lambda_mm(prob.f.smoothness, prob.mu_x, prob.g.smoothness, prob.mu_y,
                        0.0, prob.h.lip_xy, 0.0)
        rate = 1.0 / (1.0 + 1.0 / lam)
        rng = np.random.default_rng(seed)
        x0 = sol.x + rng.standard_normal(6)
        y0 = sol.y + rng.standard_normal(6)
        st = MinimaxState(x0, y0, x0.copy(), y0.copy())
        v = potential_mm(prob, st, sol)
        for _ in range(steps):
            st = mm_step(prob, st, lam)
            v2 = potential_mm(prob, st, sol)
            viol.append(v2 / (rate * v) - 1.0)
            v = v2
    return _report("contraction-mm", viol, 1e-9, f"per-step factor, {steps} steps x5")


# ---------------------------------------------------------------------------
# finite-sum suites
# ---------------------------------------------------------------------------

def _fs_suite_problem(n=3):
    return gen_quadratic_finitesum(n, 2, beta=2.0, lbar=3.0, mu=1.0, seed=30)


def _random_fs_state(problem, rng) -> FsState:
    st = FsState.at_point(problem, rng.standard_normal(problem.dim))
    st.wf = rng.standard_normal(st.wf.shape)
    st.refresh(problem)
    return st


def _fs_phi_full(problem, wx, wf):
    """Full-operator blocks at a pre-image point: (x block, dual blocks)."""
    n = problem.n
    duals = np.stack([problem.summands[i].gradient(wf[i]) for i in range(n)])
    return problem.mu * wx + duals.mean(axis=0), (wf - wx[None, :]) / n


def suite_unbiased_fs(seeds: int) -> SuiteReport:
    problem = _fs_suite_problem(3)
    p = sampling_p(problem.smoothness_list)
    lam = lambda_fs(problem.n, problem.smoothness_list, problem.mu)
    rng = np.random.default_rng(31)
    n, d = problem.n, problem.dim
    viol = []
    for _ in range(seeds):
        st = _random_fs_state(problem, rng)
        ux = rng.standard_normal(d)
        ud = rng.standard_normal((n, d))
        lhs = 0.0
        half_pre = np.empty((n, d))
        wx_half = None
        for j in range(n):
            stj = st.copy()
            wx_half = fs_step(problem, stj, j, lam, p)
            half_pre[j] = (1.0 - 1.0 / (lam * p.weights[j])) * st.wf[j] \
                + st.wx / (lam * p.weights[j])
            dual_j = problem.summands[j].gradient(half_pre[j])
            x_blk = (st.grads.sum(axis=0) / n
                     + (dual_j - st.grads[j]) / (n * p.weights[j])
                     + problem.mu * wx_half)
            dual_blk = (half_pre[j] - wx_half) / (n * p.weights[j])
            term = float(x_blk @ (wx_half - ux)) + float(dual_blk @ (dual_j - ud[j]))
            lhs += p.weights[j] * term
        # aggregate point: common x half-step, every dual at its half-step
        xb, db = _fs_phi_full(problem, wx_half, half_pre)
        rhs = float(xb @ (wx_half - ux))
        for j in range(n):
            rhs += float(db[j] @ (problem.summands[j].gradient(half_pre[j]) - ud[j]))
        viol.append(abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return _report("unbiased-fs", viol, 1e-10, "exact expectation identity, n=3")


def suite_rel_lipschitz_fs(seeds: int) -> SuiteReport:
    problem = _fs_suite_problem(3)
    p = sampling_p(problem.smoothness_list)
    lam = lambda_fs(problem.n, problem.smoothness_list, problem.mu)
    rng = np.random.default_rng(32)
    n = problem.n
    viol = []
    for _ in range(seeds):
        st = _random_fs_state(problem, rng)
        lhs = rhs = 0.0
        for j in range(n):
            stj = st.copy()
            wx_half = fs_step(problem, stj, j, lam, p)
            c = 1.0 / (lam * p.weights[j])
            wfj_half = (1.0 - c) * st.wf[j] + c * st.wx
            # estimator difference at (w_aux(j), w) paired with w_aux(j) - w_+(j)
            dual_half = problem.summands[j].gradient(wfj_half)
            dx_blk = (dual_half - st.grads[j]) / (n * p.weights[j]) \
                + problem.mu * (wx_half - st.wx)
            dd_blk = ((wfj_half - wx_half) - (st.wf[j] - st.wx)) / (n * p.weights[j])
            dual_next = stj.grads[j]
            term = (float(dx_blk @ (wx_half - stj.wx))
                    + float(dd_blk @ (dual_half - dual_next)))
            div1 = (problem.mu * bregman_euclidean(st.wx, wx_half)
                    + conjugate_divergence(problem.summands[j], st.wf[j], wfj_half) / n)
            div2 = (problem.mu * bregman_euclidean(wx_half, stj.wx)
                    + conjugate_divergence(problem.summands[j], wfj_half, stj.wf[j]) / n)
            lhs += p.weights[j] * term
            rhs += p.weights[j] * lam * (div1 + div2)
        viol.append((lhs - rhs) / max(1.0, abs(lhs), rhs))
    return _report("rel-lipschitz-fs", viol, 1e-9, f"enumerated, lambda={lam:.3f}")


def suite_strong_monotone_fs(seeds: int) -> SuiteReport:
    problem = _fs_suite_problem(3)
    rng = np.random.default_rng(33)
    viol = []
    for _ in range(seeds):
        a, b = _random_fs_state(problem, rng), _random_fs_state(problem, rng)
        xa, da = _fs_phi_full(problem, a.wx, a.wf)
        xb, db = _fs_phi_full(problem, b.wx, b.wf)
        lhs = float((xa - xb) @ (a.wx - b.wx))
        for i in range(problem.n):
            dai = problem.summands[i].gradient(a.wf[i])
            dbi = problem.summands[i].gradient(b.wf[i])
            lhs += float((da[i] - db[i]) @ (dai - dbi))
        rhs = 0.0
        for st1, st2 in ((a, b), (b, a)):
            rhs += problem.mu * bregman_euclidean(st1.wx, st2.wx)
            for i in range(problem.n):
                rhs += conjugate_divergence(problem.summands[i], st1.wf[i], st2.wf[i]) \
                    / problem.n
        viol.append((rhs - lhs) / max(1.0, abs(lhs), rhs))
    return _report("strong-monotone-fs", viol, 1e-9, "modulus 1 w.r.t. r")


def suite_halving_fs(seeds: int) -> SuiteReport:
    problem = gen_quadratic_finitesum(10, 10, beta=2.0, lbar=1.0, mu=1.0, seed=34)
    sol = exact_min(problem)
    sched = FsSchedule.for_problem(problem, 1.0, 1e-6)
    x0 = sol.x + np.ones(problem.dim)
    phases = max(50, 2 * seeds)
    ratios = []
    for s in range(phases):
        st = FsState.at_point(problem, x0)
        v0 = potential_fs(problem, st, sol)
        st2, _ = fs_one_phase(problem, st, sched, SeededRng(s))
        ratios.append(potential_fs(problem, st2, sol) / v0)
    mean = float(np.mean(ratios))
    return SuiteReport("halving-fs", mean <= 0.55, mean, 0.55,
                       f"mean over {phases} phases (theory 0.5)")


def suite_cache_coherence_fs(seeds: int) -> SuiteReport:
    problem = _fs_suite_problem(4)
    sched = FsSchedule.for_problem(problem, 1.0, 1e-6)
    rng = SeededRng(35)
    st = FsState.at_point(problem, np.ones(problem.dim))
    viol = []
    for step in range(max(200, seeds)):
        j = sched.p.sample(rng)
        fs_step(problem, st, j, sched.lam, sched.p)
        if step % 50 == 49:
            fresh = np.stack([problem.summands[i].gradient(st.wf[i])
                              for i in range(problem.n)])
            num = float(np.linalg.norm(st.grad_sum - fresh.sum(axis=0)))
            den = max(1.0, float(np.linalg.norm(fresh.sum(axis=0))))
            viol.append(num / den)
            for i in range(problem.n):
                viol.append(float(np.linalg.norm(st.grads[i] - fresh[i]))
                            / max(1.0, float(np.linalg.norm(fresh[i]))) - 1e-12)
    return _report("cache-coherence-fs", viol, 1e-10, "grad caches vs recomputation")


# ---------------------------------------------------------------------------
# mmfs suites
# ---------------------------------------------------------------------------

def _mmfs_suite_problem(n=2, with_hquad=True, seed=40):
    return gen_quadratic_mmfs(n, 2, 2, cond_x=3, cond_y=3, lam_scale=0.8,
                              seed=seed, with_hquad=with_hquad)


def _random_mmfs_state(problem, rng) -> MmfsState:
    st = MmfsState.at_point(problem, rng.standard_normal(problem.dim_x),
                            rng.standard_normal(problem.dim_y))
    st.wf = rng.standard_normal(st.wf.shape)
    st.wg = rng.standard_normal(st.wg.shape)
    st.refresh(problem)
    return st


def suite_unbiased_mmfs(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(2)
    sched = schedule_mmfs(problem, 1.0, 1e-6)
    n, dx, dy = problem.n, problem.dim_x, problem.dim_y
    g = sched.gamma
    rng = np.random.default_rng(41)
    viol = []
    for _ in range(seeds):
        center = _random_mmfs_state(problem, rng)
        st = _random_mmfs_state(problem, rng)
        anchor = AnchorCache.at_state(problem, st)
        ux, uy = rng.standard_normal(dx), rng.standard_normal(dy)
        udf = rng.standard_normal((n, dx))
        udg = rng.standard_normal((n, dy))
        # primal half-steps depend only on l; dual half pre-images only on j/k
        wx_half, wy_half = {}, {}
        for l in range(n):
            stl = st.copy()
            mmfs_step(problem, anchor, center, stl, (0, 0, l, 0), sched)
            hpair = _mmfs_half(problem, anchor, center, st, (0, 0, l, 0), sched)
            wx_half[l], wy_half[l] = hpair[0], hpair[1]
        wf_half = np.stack([
            st.wf[j] - (1 / (sched.lam * sched.p.weights[j]))
            * ((1 + g) * st.wf[j] - g * center.wf[j] - st.wx) for j in range(n)])
        wg_half = np.stack([
            st.wg[k] - (1 / (sched.lam * sched.q.weights[k]))
            * ((1 + g) * st.wg[k] - g * center.wg[k] - st.wy) for k in range(n)])
        duals_f_half = np.stack([problem.fs[j].gradient(wf_half[j]) for j in range(n)])
        duals_g_half = np.stack([problem.gs[k].gradient(wg_half[k]) for k in range(n)])

        lhs = 0.0
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for lp in range(n):
                        wgt = (sched.p.weights[j] * sched.q.weights[k]
                               * sched.r.weights[l] * sched.r.weights[lp])
                        term = _mmfs_estimator_aux_ip(
                            problem, anchor, center, st, sched, (j, k, l, lp),
                            wx_half[l], wy_half[l], wf_half, wg_half,
                            duals_f_half, duals_g_half, ux, uy, udf, udg)
                        lhs += wgt * term
        rhs = 0.0
        for l in range(n):
            rhs += sched.r.weights[l] * _mmfs_full_ip(
                problem, center, sched, wx_half[l], wy_half[l], wf_half, wg_half,
                duals_f_half, duals_g_half, ux, uy, udf, udg)
        viol.append(abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
    return _report("unbiased-mmfs", viol, 1e-10, "exact expectation identity, n=2")


def _mmfs_half(problem, anchor, center, st, idx, sched):
    """Primal half-step pair without mutating ``st``."""
    j, k, l, lp = idx
    n = problem.n
    g = sched.gamma
    rl = n * sched.r.weights[l]
    h = problem.hs[l]
    phi_x = (anchor.phi_x + (h.grad_x(st.wx, st.wy) - anchor.hx[l]) / rl
             + (1 + g) * problem.mu_x * st.wx - g * problem.mu_x * center.wx
             + st.fsum / n)
    phi_y = (-anchor.mean_hy - (h.grad_y(st.wx, st.wy) - anchor.hy[l]) / rl
             + (1 + g) * problem.mu_y * st.wy - g * problem.mu_y * center.wy
             + st.gsum / n)
    return (st.wx - phi_x / (sched.lam * problem.mu_x),
            st.wy - phi_y / (sched.lam * problem.mu_y))


def _mmfs_estimator_aux_ip(problem, anchor, center, st, sched, idx, wx_half, wy_half,
                           wf_half, wg_half, duals_f_half, duals_g_half,
                           ux, uy, udf, udg):
    """<Phi_{jkl'}(w_aux(jkl)), w_aux(jkl) - u> with explicit block algebra."""
    j, k, l, lp = idx
    n = problem.n
    g = sched.gamma
    rlp = n * sched.r.weights[lp]
    hlp = problem.hs[lp]
    x_blk = (anchor.phi_x + (hlp.grad_x(wx_half, wy_half) - anchor.hx[lp]) / rlp
             + (1 + g) * problem.mu_x * wx_half - g * problem.mu_x * center.wx
             + st.fsum / n + (duals_f_half[j] - st.fgrads[j]) / (n * sched.p.weights[j]))
    y_blk = (-anchor.mean_hy - (hlp.grad_y(wx_half, wy_half) - anchor.hy[lp]) / rlp
             + (1 + g) * problem.mu_y * wy_half - g * problem.mu_y * center.wy
             + st.gsum / n + (duals_g_half[k] - st.ggrads[k]) / (n * sched.q.weights[k]))
    f_blk = ((1 + g) * wf_half[j] - g * center.wf[j] - wx_half) / (n * sched.p.weights[j])
    g_blk = ((1 + g) * wg_half[k] - g * center.wg[k] - wy_half) / (n * sched.q.weights[k])
    ip = float(x_blk @ (wx_half - ux)) + float(y_blk @ (wy_half - uy))
    ip += float(f_blk @ (duals_f_half[j] - udf[j]))
    ip += float(g_blk @ (duals_g_half[k] - udg[k]))
    return ip


def _mmfs_full_ip(problem, center, sched, wx_half, wy_half, wf_half, wg_half,
                  duals_f_half, duals_g_half, ux, uy, udf, udg):
    """<Phi(wbar(l)), wbar(l) - u> for the gamma-regularized full operator."""
    n = problem.n
    g = sched.gamma
    hx = sum(problem.hs[i].grad_x(wx_half, wy_half) for i in range(n)) / n
    hy = sum(problem.hs[i].grad_y(wx_half, wy_half) for i in range(n)) / n
    x_blk = ((1 + g) * problem.mu_x * wx_half - g * problem.mu_x * center.wx
             + duals_f_half.mean(axis=0) + hx)
    y_blk = ((1 + g) * problem.mu_y * wy_half - g * problem.mu_y * center.wy
             + duals_g_half.mean(axis=0) - hy)
    ip = float(x_blk @ (wx_half - ux)) + float(y_blk @ (wy_half - uy))
    for j in range(n):
        f_blk = ((1 + g) * wf_half[j] - g * center.wf[j] - wx_half) / n
        ip += float(f_blk @ (duals_f_half[j] - udf[j]))
    for k in range(n):
        g_blk = ((1 + g) * wg_half[k] - g * center.wg[k] - wy_half) / n
        ip += float(g_blk @ (duals_g_half[k] - udg[k]))
    return ip


def suite_strong_monotone_mmfs(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(2)
    sched = schedule_mmfs(problem, 1.0, 1e-6)
    g = sched.gamma
    rng = np.random.default_rng(42)
    n = problem.n
    viol = []
    for _ in range(seeds):
        center = _random_mmfs_state(problem, rng)
        a, b = _random_mmfs_state(problem, rng), _random_mmfs_state(problem, rng)
        # operator difference (the gamma * grad r(center) constant cancels)
        hxa = sum(problem.hs[i].grad_x(a.wx, a.wy) for i in range(n)) / n
        hxb = sum(problem.hs[i].grad_x(b.wx, b.wy) for i in range(n)) / n
        hya = sum(problem.hs[i].grad_y(a.wx, a.wy) for i in range(n)) / n
        hyb = sum(problem.hs[i].grad_y(b.wx, b.wy) for i in range(n)) / n
        dx_blk = ((1 + g) * problem.mu_x * (a.wx - b.wx)
                  + (a.fgrads.mean(axis=0) - b.fgrads.mean(axis=0)) + (hxa - hxb))
        dy_blk = ((1 + g) * problem.mu_y * (a.wy - b.wy)
                  + (a.ggrads.mean(axis=0) - b.ggrads.mean(axis=0)) - (hya - hyb))
        lhs = float(dx_blk @ (a.wx - b.wx)) + float(dy_blk @ (a.wy - b.wy))
        for i in range(n):
            df_blk = ((1 + g) * (a.wf[i] - b.wf[i]) - (a.wx - b.wx)) / n
            dg_blk = ((1 + g) * (a.wg[i] - b.wg[i]) - (a.wy - b.wy)) / n
            lhs += float(df_blk @ (a.fgrads[i] - b.fgrads[i]))
            lhs += float(dg_blk @ (a.ggrads[i] - b.ggrads[i]))
        sym = 0.0
        for s1, s2 in ((a, b), (b, a)):
            sym += (problem.mu_x * bregman_euclidean(s1.wx, s2.wx)
                    + problem.mu_y * bregman_euclidean(s1.wy, s2.wy))
            for i in range(n):
                sym += conjugate_divergence(problem.fs[i], s1.wf[i], s2.wf[i]) / n
                sym += conjugate_divergence(problem.gs[i], s1.wg[i], s2.wg[i]) / n
        rhs = (1 + g) * sym
        viol.append((rhs - lhs) / max(1.0, abs(lhs), rhs))
    return _report("strong-monotone-mmfs", viol, 1e-9, f"modulus 1+gamma={1+g:.2f}")


def suite_rel_lipschitz_fg_mmfs(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(2)
    sched = schedule_mmfs(problem, 1.0, 1e-6)
    n = problem.n
    g = sched.gamma
    lam_fg = (2 * n * (1 + g)
              + float(np.sqrt(problem.lx_list()).sum()) / math.sqrt(n * problem.mu_x)
              + float(np.sqrt(problem.ly_list()).sum()) / math.sqrt(n * problem.mu_y))
    rng = np.random.default_rng(43)
    viol = []
    for _ in range(seeds):
        center = _random_mmfs_state(problem, rng)
        st = _random_mmfs_state(problem, rng)
        anchor = AnchorCache.at_state(problem, st)
        lhs = rhs = 0.0
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for lp in range(n):
                        wgt = (sched.p.weights[j] * sched.q.weights[k]
                               * sched.r.weights[l] * sched.r.weights[lp])
                        t_lhs, t_rhs = _fg_rl_term(problem, anchor, center, st, sched,
                                                   (j, k, l, lp))
                        lhs += wgt * t_lhs
                        rhs += wgt * lam_fg * t_rhs
        viol.append((lhs - rhs) / max(1.0, abs(lhs), rhs))
    return _report("rel-lipschitz-fg-mmfs", viol, 1e-9,
                   f"enumerated fg part, lambda_fg={lam_fg:.2f}")


def _fg_rl_term(problem, anchor, center, st, sched, idx):
    """One enumerated term of the fg-part expected relative Lipschitzness."""
    j, k, l, lp = idx
    n = problem.n
    g = sched.gamma
    stp = st.copy()
    wx_half, wy_half = mmfs_step(problem, anchor, center, stp, idx, sched)
    cj = 1.0 / (sched.lam * sched.p.weights[j])
    dk = 1.0 / (sched.lam * sched.q.weights[k])
    wfj_half = st.wf[j] - cj * ((1 + g) * st.wf[j] - g * center.wf[j] - st.wx)
    wgk_half = st.wg[k] - dk * ((1 + g) * st.wg[k] - g * center.wg[k] - st.wy)
    duals_fj_half = problem.fs[j].gradient(wfj_half)
    duals_gk_half = problem.gs[k].gradient(wgk_half)
    # fg estimator difference: sep + bilin blocks only (no coupling terms)
    x_blk = ((1 + g) * problem.mu_x * (wx_half - st.wx)
             + (duals_fj_half - st.fgrads[j]) / (n * sched.p.weights[j]))
    y_blk = ((1 + g) * problem.mu_y * (wy_half - st.wy)
             + (duals_gk_half - st.ggrads[k]) / (n * sched.q.weights[k]))
    f_blk = (((1 + g) * wfj_half - wx_half) - ((1 + g) * st.wf[j] - st.wx)) \
        / (n * sched.p.weights[j])
    g_blk = (((1 + g) * wgk_half - wy_half) - ((1 + g) * st.wg[k] - st.wy)) \
        / (n * sched.q.weights[k])
    lhs = float(x_blk @ (wx_half - stp.wx)) + float(y_blk @ (wy_half - stp.wy))
    lhs += float(f_blk @ (duals_fj_half - stp.fgrads[j]))
    lhs += float(g_blk @ (duals_gk_half - stp.ggrads[k]))
    div1 = (problem.mu_x * bregman_euclidean(st.wx, wx_half)
            + problem.mu_y * bregman_euclidean(st.wy, wy_half)
            + conjugate_divergence(problem.fs[j], st.wf[j], wfj_half) / n
            + conjugate_divergence(problem.gs[k], st.wg[k], wgk_half) / n)
    div2 = (problem.mu_x * bregman_euclidean(wx_half, stp.wx)
            + problem.mu_y * bregman_euclidean(wy_half, stp.wy)
            + conjugate_divergence(problem.fs[j], wfj_half, stp.wf[j]) / n
            + conjugate_divergence(problem.gs[k], wgk_half, stp.wg[k]) / n)
    return lhs, div1 + div2


def suite_halving_mmfs(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(4, with_hquad=False, seed=44)
    sched = schedule_mmfs(problem, 1.0, 1e-6)
    rng = np.random.default_rng(45)
    center = MmfsState.at_point(problem, rng.standard_normal(problem.dim_x),
                                rng.standard_normal(problem.dim_y))
    xs, ys, uf, ug, _ = mmfs_prox_vi_solution(problem, center, sched.gamma)
    phases = max(50, seeds)
    ratios = []
    for s in range(phases):
        st = center.copy()
        anchor = AnchorCache.at_state(problem, st)
        v0 = potential_mmfs_to(problem, st, xs, ys, uf, ug)
        st2, _, _ = mmfs_inner_phase(problem, anchor, center, st, sched, SeededRng(s))
        ratios.append(potential_mmfs_to(problem, st2, xs, ys, uf, ug) / v0)
    mean = float(np.mean(ratios))
    return SuiteReport("halving-mmfs", mean <= 0.55, mean, 0.55,
                       f"mean over {phases} phases (theory 0.5)")


def suite_outer_contraction_mmfs(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(4, with_hquad=False, seed=46)
    sched = schedule_mmfs(problem, 1.0, 1e-6)
    sol = exact_saddle(problem)
    rng = np.random.default_rng(47)
    center = MmfsState.at_point(problem, sol.x + rng.standard_normal(problem.dim_x),
                                sol.y + rng.standard_normal(problem.dim_y))
    v_t = potential_mmfs(problem, center, sol)
    runs = max(25, seeds // 2)
    ratios = []
    for s in range(runs):
        st, _ = mmfs_inner(problem, center, sched, SeededRng(1000 + s))
        ratios.append(potential_mmfs(problem, st, sol) / v_t)
    mean = float(np.mean(ratios))
    factor = 4 * sched.gamma / (1 + 4 * sched.gamma)
    return SuiteReport("outer-contraction-mmfs", mean <= 1.1 * factor, mean, 1.1 * factor,
                       f"mean over {runs} outer steps (bound {factor:.3f})")


def suite_anchor_coherence(seeds: int) -> SuiteReport:
    problem = _mmfs_suite_problem(3, seed=48)
    sched = schedule_mmfs(problem, 1.0, 1e-6, phase_len=40)
    rng = SeededRng(49)
    center = MmfsState.at_point(problem, np.ones(problem.dim_x), -np.ones(problem.dim_y))
    st = center.copy()
    anchor = AnchorCache.at_state(problem, st)
    viol = []
    for _ in range(max(5, min(seeds // 10, 20))):
        st, anchor, _ = mmfs_inner_phase(problem, anchor, center, st, sched, rng)
        fresh = AnchorCache.at_state(problem, st)
        viol.append(float(np.max(np.abs(fresh.phi_x - anchor.phi_x)))
                    / max(1.0, float(np.max(np.abs(fresh.phi_x)))))
        viol.append(float(np.max(np.abs(fresh.mean_hy - anchor.mean_hy)))
                    / max(1.0, float(np.max(np.abs(fresh.mean_hy)))))
    return _report("anchor-coherence", viol, 1e-10, "cached coupling grads at rebase")


# ---------------------------------------------------------------------------
# reduction + testbed suites
# ---------------------------------------------------------------------------

def suite_reduction_halving(seeds: int) -> SuiteReport:
    from .testbed import gen_aggregate_only_finitesum

    summands, mu = gen_aggregate_only_finitesum(8, 4, seed=50)
    sol = exact_min(FiniteSumProblem(summands, 1e-12))  # mu ~ 0: pure aggregate min
    viol = []

    def exact_sub(sub, x_init, k):
        return exact_min(sub).x

    x0 = sol.x + np.ones(4)
    x, iters = redx_convex(summands, mu, x0, 10, exact_sub)
    for a, b in zip(iters, iters[1:]):
        va = bregman_euclidean(a, sol.x)
        vb = bregman_euclidean(b, sol.x)
        viol.append((vb - 0.5 * va) / max(1.0, va))

    from .problems import MinimaxFiniteSumProblem
    from .testbed import gen_aggregate_only_mmfs

    fs, gs, hs, mu_x, mu_y = gen_aggregate_only_mmfs(6, 3, 3, seed=51)
    sol_mm = exact_saddle(MinimaxFiniteSumProblem(fs, gs, hs, 1e-12, 1e-12))

    def omega(z, zs):
        return (mu_x * bregman_euclidean(z[0], zs.x) + mu_y * bregman_euclidean(z[1], zs.y))

    def exact_sub_mm(sub, x_init, y_init, k):
        s = exact_saddle(sub)
        return s.x, s.y

    z0 = (sol_mm.x + np.ones(3), sol_mm.y - np.ones(3))
    (_, _), iters_mm = redx_minimax(fs, gs, hs, mu_x, mu_y, z0, 8, exact_sub_mm)
    for a, b in zip(iters_mm, iters_mm[1:]):
        va, vb = omega(a, sol_mm), omega(b, sol_mm)
        viol.append((vb - 0.5 * va) / max(1.0, va))
    return _report("reduction-halving", viol, 1e-9, "per-step 1/2 with exact subsolver")


def suite_shift_correctness(seeds: int) -> SuiteReport:
    from .problems import finite_sum_gradient

    rng = np.random.default_rng(52)
    problem = gen_quadratic_finitesum(4, 3, beta=1.0, lbar=2.0, mu=1.0, seed=53)
    viol = []
    for _ in range(max(5, seeds // 10)):
        xc = rng.standard_normal(3)
        sub = shifted_fs_subproblem(problem.summands, problem.mu, xc)
        for _ in range(5):
            x = rng.standard_normal(3)
            lhs = finite_sum_gradient(sub, x)
            base = np.zeros(3)
            for s in problem.summands:
                base += s.gradient(x)
            base = base / problem.n
            rhs = base + (problem.mu / 4.0) * (x - xc)
            viol.append(float(np.max(np.abs(lhs - rhs))) / max(1.0, float(np.max(np.abs(rhs)))))
        sub2 = shifted_mmfs_subproblem(
            [problem.summands[0]], [problem.summands[1]],
            [gen_quadratic_mmfs(1, 3, 3, seed=1).hs[0]], 1.0, 1.0, xc, -xc)
        x = rng.standard_normal(3)
        lhs2 = sub2.fs[0].gradient(x) + sub2.mu_x * x
        rhs2 = problem.summands[0].gradient(x) + 0.25 * x - 0.25 * xc
        viol.append(float(np.max(np.abs(lhs2 - rhs2))) / max(1.0, float(np.max(np.abs(rhs2)))))
    return _report("shift-correctness", viol, 1e-12, "wrapped gradient identity")


def suite_testbed_constants(seeds: int) -> SuiteReport:
    rng = np.random.default_rng(54)
    viol = []
    prob = gen_quadratic_minimax(4, 3, cond_x=50, cond_y=20, lam_targets=(0.6, 2.5, 0.9),
                                 seed=55, dense=True)
    for _ in range(seeds):
        x1, x2 = rng.standard_normal(4), rng.standard_normal(4)
        y1, y2 = rng.standard_normal(3), rng.standard_normal(3)
        nx, ny = float(np.linalg.norm(x1 - x2)), float(np.linalg.norm(y1 - y2))
        viol.append(float(np.linalg.norm(prob.f.gradient(x1) - prob.f.gradient(x2)))
                    - prob.f.smoothness * nx - 1e-9)
        viol.append(float(np.linalg.norm(prob.g.gradient(y1) - prob.g.gradient(y2)))
                    - prob.g.smoothness * ny - 1e-9)
        viol.append(float(np.linalg.norm(prob.h.grad_x(x1, y1) - prob.h.grad_x(x2, y2)))
                    - (prob.h.lip_xx * nx + prob.h.lip_xy * ny) - 1e-9)
        viol.append(float(np.linalg.norm(prob.h.grad_y(x1, y1) - prob.h.grad_y(x2, y2)))
                    - (prob.h.lip_xy * nx + prob.h.lip_yy * ny) - 1e-9)
    return _report("testbed-constants", viol, 0.0, "sampled ratios vs declared")


def suite_exact_solutions(seeds: int) -> SuiteReport:
    viol = []
    for seed in range(max(3, min(seeds // 10, 10))):
        prob = gen_quadratic_minimax(5, 5, cond_x=30, cond_y=10,
                                     lam_targets=(0.5, 2.0, 0.5), seed=seed)
        sol = exact_saddle(prob)
        viol.append(sol.residual - 1e-10 * max(1.0, float(np.linalg.norm(sol.x))))
        fsprob = gen_quadratic_finitesum(6, 5, beta=1.0, lbar=5.0, mu=1.0, seed=seed)
        sol2 = exact_min(fsprob)
        from .problems import finite_sum_gradient
        res = float(np.linalg.norm(finite_sum_gradient(fsprob, sol2.x)))
        viol.append(res - 1e-9)
    return _report("exact-solutions", viol, 0.0, "stationarity residuals")


def suite_conjugate_grid(seeds: int) -> SuiteReport:
    # separable 2-D diagonal quadratic: the sup splits per coordinate
    diag = np.array([0.8, 2.5])
    lin = np.array([0.3, -0.7])
    f = QuadraticOracle(diag, lin)
    grids = [np.arange(-5.0, 5.0 + 1e-12, 1e-4) for _ in range(2)]
    rng = np.random.default_rng(56)
    viol = []
    for _ in range(max(3, min(seeds // 20, 8))):
        p = rng.uniform(-2, 2, 2)
        brute = 0.0
        for i in range(2):
            vals = p[i] * grids[i] - (0.5 * diag[i] * grids[i] ** 2 + lin[i] * grids[i])
            brute += float(vals.max())
        viol.append(abs(brute - f.conjugate_value(p)))
    return _report("conjugate-grid", viol, 1e-6, "closed form vs grid sup (radius 5)")


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

SUITES = {
    "bregman": suite_bregman,
    "three-point": suite_three_point,
    "conjugate-divergence": suite_conjugate_divergence,
    "rng-repro": suite_rng_repro,
    "sampling": suite_sampling,
    "grad-consistency": suite_grad_consistency,
    "conjugate-facts": suite_conjugate_facts,
    "monotone-ops": suite_monotone_ops,
    "best-response": suite_best_response,
    "rel-lipschitz-mm": suite_rel_lipschitz_mm,
    "nabla-r-rl": suite_nabla_r_rl,
    "strong-monotone-mm": suite_strong_monotone_mm,
    "contraction-mm": suite_contraction_mm,
    "unbiased-fs": suite_unbiased_fs,
    "rel-lipschitz-fs": suite_rel_lipschitz_fs,
    "strong-monotone-fs": suite_strong_monotone_fs,
    "halving-fs": suite_halving_fs,
    "cache-coherence-fs": suite_cache_coherence_fs,
    "unbiased-mmfs": suite_unbiased_mmfs,
    "strong-monotone-mmfs": suite_strong_monotone_mmfs,
    "rel-lipschitz-fg-mmfs": suite_rel_lipschitz_fg_mmfs,
    "halving-mmfs": suite_halving_mmfs,
    "outer-contraction-mmfs": suite_outer_contraction_mmfs,
    "anchor-coherence": suite_anchor_coherence,
    "reduction-halving": suite_reduction_halving,
    "shift-correctness": suite_shift_correctness,
    "testbed-constants": suite_testbed_constants,
    "exact-solutions": suite_exact_solutions,
    "conjugate-grid": suite_conjugate_grid,
}

SUITE_NAMES = tuple(SUITES)


def run_suite(name: str, seeds: int = 100) -> SuiteReport:
    if name not in SUITES:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}")
    return SUITES[name](seeds)


def run_all(seeds: int = 100) -> list[SuiteReport]:
    return [SUITES[name](seeds) for name in SUITE_NAMES]
