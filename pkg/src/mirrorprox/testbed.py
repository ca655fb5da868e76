"""Quadratic test instances with exact solutions and closed-form gaps.

Default generators use diagonal curvature blocks so declared smoothness
constants are exact spectra; dense variants rotate a known spectrum by a
random orthogonal matrix, so constants stay exact.  Exact saddle points and
minimizers come from direct solves of the blocked stationarity systems, and
duality gaps from closed-form best responses (two more solves).  Desk scale
(d, n <= 500) keeps all of this dense and cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidSpecError, SingularSystemError
from .oracles import (
    BilinearCoupling,
    QuadraticCoupling,
    QuadraticOracle,
    TiltedOracle,
    ZeroCoupling,
    ZeroOracle,
)
from .problems import FiniteSumProblem, MinimaxFiniteSumProblem, SeparableMinimaxProblem

__all__ = [
    "ExactSolution",
    "gen_quadratic_minimax",
    "gen_quadratic_finitesum",
    "gen_aggregate_only_finitesum",
    "gen_aggregate_only_mmfs",
    "gen_quadratic_mmfs",
    "exact_saddle",
    "exact_min",
    "duality_gap_quadratic",
    "mmfs_duality_gap",
    "mmfs_prox_vi_solution",
]


@dataclass
class ExactSolution:
    """Solution points plus the stationarity residual of the direct solve."""

    x: np.ndarray
    y: np.ndarray | None
    residual: float


# ---------------------------------------------------------------------------
# quadratic data extraction
# ---------------------------------------------------------------------------

def quad_data(oracle) -> tuple[np.ndarray, np.ndarray]:
    """Dense (matrix, linear) pair of a quadratic-family oracle."""
    if isinstance(oracle, QuadraticOracle):
        m = np.diag(oracle.diag) if oracle.diag is not None else oracle.mat
        return m.copy(), oracle.lin.copy()
    if isinstance(oracle, ZeroOracle):
        return np.zeros((oracle.dim, oracle.dim)), np.zeros(oracle.dim)
    if isinstance(oracle, TiltedOracle):
        m, v = quad_data(oracle.base)
        return m + oracle.quad * np.eye(oracle.dim), v + oracle.lin
    raise TypeError(f"not a quadratic-family oracle: {type(oracle)!r}")


def coupling_data(h):
    """Dense (C, P, Q, b, c) of a quadratic-family coupling."""
    if isinstance(h, ZeroCoupling):
        z = np.zeros((h.dim_y, h.dim_x))
        return (z, np.zeros((h.dim_x, h.dim_x)), np.zeros((h.dim_y, h.dim_y)),
                np.zeros(h.dim_y), np.zeros(h.dim_x))
    if isinstance(h, BilinearCoupling):
        return (h.c_mat.copy(), np.zeros((h.dim_x, h.dim_x)),
                np.zeros((h.dim_y, h.dim_y)), h.b_vec.copy(), h.c_vec.copy())
    if isinstance(h, QuadraticCoupling):
        def dense(m, d):
            if m is None:
                return np.zeros((d, d))
            return np.diag(m) if m.ndim == 1 else m.copy()
        return (h.c_mat.copy(), dense(h.p_mat, h.dim_x), dense(h.q_mat, h.dim_y),
                h.b_vec.copy(), h.c_vec.copy())
    raise TypeError(f"not a quadratic-family coupling: {type(h)!r}")


def _mm_blocks(problem: SeparableMinimaxProblem):
    a_mat, a_vec = quad_data(problem.f)
    b_mat, b_vec = quad_data(problem.g)
    c_mat, p_mat, q_mat, bh, ch = coupling_data(problem.h)
    mx = a_mat + p_mat + problem.mu_x * np.eye(problem.dim_x)
    my = b_mat + q_mat + problem.mu_y * np.eye(problem.dim_y)
    return mx, my, c_mat, a_vec + ch, b_vec + bh


def _mmfs_aggregate(problem: MinimaxFiniteSumProblem) -> SeparableMinimaxProblem:
    """Collapse an mmfs instance to its aggregate separable-minimax quadratic."""
    n = problem.n
    a_mat = sum(quad_data(f)[0] for f in problem.fs) / n
    a_vec = sum(quad_data(f)[1] for f in problem.fs) / n
    b_mat = sum(quad_data(g)[0] for g in problem.gs) / n
    b_vec = sum(quad_data(g)[1] for g in problem.gs) / n
    cs = [coupling_data(h) for h in problem.hs]
    c_mat = sum(c[0] for c in cs) / n
    p_mat = sum(c[1] for c in cs) / n
    q_mat = sum(c[2] for c in cs) / n
    bh = sum(c[3] for c in cs) / n
    ch = sum(c[4] for c in cs) / n
    f = QuadraticOracle(a_mat, a_vec)
    g = QuadraticOracle(b_mat, b_vec)
    h = QuadraticCoupling(c_mat, p_mat, q_mat, bh, ch)
    return SeparableMinimaxProblem(f, g, h, problem.mu_x, problem.mu_y)


def _solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    try:
        sol = np.linalg.solve(mat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(str(exc)) from exc
    if not np.all(np.isfinite(sol)):
        raise SingularSystemError("linear solve produced non-finite entries")
    return sol


# ---------------------------------------------------------------------------
# exact solutions
# ---------------------------------------------------------------------------

def exact_saddle(problem) -> ExactSolution:
    """Direct solve of the blocked stationarity system of a quadratic instance."""
    if isinstance(problem, MinimaxFiniteSumProblem):
        problem = _mmfs_aggregate(problem)
    mx, my, c_mat, rx, ry = _mm_blocks(problem)
    dx, dy = problem.dim_x, problem.dim_y
    kkt = np.block([[mx, c_mat.T], [c_mat, -my]])
    rhs = np.concatenate([-rx, ry])
    sol = _solve(kkt, rhs)
    x, y = sol[:dx], sol[dx:]
    res = np.linalg.norm(kkt @ sol - rhs)
    scale = max(1.0, float(np.linalg.norm(rhs)))
    if res > 1e-8 * scale:
        raise SingularSystemError(f"stationarity residual {res:g} too large")
    return ExactSolution(x=x, y=y, residual=float(res))


def exact_min(problem: FiniteSumProblem) -> ExactSolution:
    """Minimizer of a quadratic finite-sum instance by direct solve."""
    n = problem.n
    a_mat = sum(quad_data(s)[0] for s in problem.summands) / n
    a_vec = sum(quad_data(s)[1] for s in problem.summands) / n
    mat = a_mat + problem.mu * np.eye(problem.dim)
    x = _solve(mat, -a_vec)
    res = float(np.linalg.norm(mat @ x + a_vec))
    return ExactSolution(x=x, y=None, residual=res)


def duality_gap_quadratic(problem: SeparableMinimaxProblem, x, y) -> float:
    """Gap(x, y) = max_y' F(x, y') - min_x' F(x', y) via two linear solves."""
    mx, my, c_mat, rx, ry = _mm_blocks(problem)
    y_best = _solve(my, c_mat @ x - ry)
    x_best = _solve(mx, -(rx + c_mat.T @ y))
    return problem.objective(x, y_best) - problem.objective(x_best, y)


def mmfs_duality_gap(problem: MinimaxFiniteSumProblem, x, y) -> float:
    return duality_gap_quadratic(_mmfs_aggregate(problem), x, y)


def mmfs_prox_vi_solution(problem: MinimaxFiniteSumProblem, zbar, gamma: float):
    """Solution of the gamma-regularized inner VI, in pre-image representation.

    ``zbar`` carries the proximal center (x, y, per-summand pre-images uf, ug).
    At the solution the dual pre-images collapse to (x + gamma*uf_i)/(1+gamma),
    so the VI reduces to one (dx+dy)-dimensional linear solve.

    Returns (x, y, uf (n,dx), ug (n,dy), residual).
    """
    n = problem.n
    dx, dy = problem.dim_x, problem.dim_y
    g1 = 1.0 + gamma
    a_mats = [quad_data(f)[0] for f in problem.fs]
    a_vecs = [quad_data(f)[1] for f in problem.fs]
    b_mats = [quad_data(g)[0] for g in problem.gs]
    b_vecs = [quad_data(g)[1] for g in problem.gs]
    cs = [coupling_data(h) for h in problem.hs]
    c_mat = sum(c[0] for c in cs) / n
    p_mat = sum(c[1] for c in cs) / n
    q_mat = sum(c[2] for c in cs) / n
    bh = sum(c[3] for c in cs) / n
    ch = sum(c[4] for c in cs) / n
    a_bar = sum(a_mats) / n
    b_bar = sum(b_mats) / n
    a_vec = sum(a_vecs) / n
    b_vec = sum(b_vecs) / n
    au = sum(a_mats[i] @ zbar.wf[i] for i in range(n)) / n
    bv = sum(b_mats[i] @ zbar.wg[i] for i in range(n)) / n

    mx = g1 * problem.mu_x * np.eye(dx) + a_bar / g1 + p_mat
    my = g1 * problem.mu_y * np.eye(dy) + b_bar / g1 + q_mat
    rx = gamma * problem.mu_x * zbar.wx - a_vec - ch - (gamma / g1) * au
    ry = gamma * problem.mu_y * zbar.wy - b_vec - bh - (gamma / g1) * bv
    kkt = np.block([[mx, c_mat.T], [-c_mat, my]])
    rhs = np.concatenate([rx, ry])
    sol = _solve(kkt, rhs)
    x, y = sol[:dx], sol[dx:]
    uf = (x[None, :] + gamma * zbar.wf) / g1
    ug = (y[None, :] + gamma * zbar.wg) / g1
    res = float(np.linalg.norm(kkt @ sol - rhs))
    return x, y, uf, ug, res


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def _spread_diag(rng, d: int, lmax: float, spread: float = 10.0) -> np.ndarray:
    """Diagonal with exact maximum ``lmax``, log-spread below it."""
    if lmax <= 0:
        return np.zeros(d)
    if d == 1:
        return np.array([lmax])
    lo = lmax / spread
    vals = np.exp(rng.uniform(math.log(lo), math.log(lmax), size=d))
    vals[rng.integers(d)] = lmax
    return vals


def _scaled_matrix(rng, rows: int, cols: int, opnorm: float) -> np.ndarray:
    if opnorm <= 0:
        return np.zeros((rows, cols))
    m = rng.standard_normal((rows, cols))
    s = np.linalg.svd(m, compute_uv=False)[0]
    return m * (opnorm / s)


def _rotate(rng, diag: np.ndarray) -> np.ndarray:
    d = diag.size
    q, _ = np.linalg.qr(rng.standard_normal((d, d)))
    return (q * diag) @ q.T


def gen_quadratic_minimax(dx: int, dy: int, *, cond_x: float = 10.0, cond_y: float = 10.0,
                          lam_targets=(0.0, 1.0, 0.0), mu_x: float = 1.0, mu_y: float = 1.0,
                          seed: int = 0, dense: bool = False,
                          lin_scale: float = 1.0) -> SeparableMinimaxProblem:
    """Seeded quadratic separable-minimax instance with exact declared constants.

    ``cond_x`` sets L_x = cond_x * mu_x (same for y); ``lam_targets`` is the
    (lip_xx, lip_xy, lip_yy) triple for the coupling.
    """
    lxx, lxy, lyy = (float(v) for v in lam_targets)
    if min(cond_x, cond_y, mu_x, mu_y) <= 0 or min(lxx, lxy, lyy) < 0:
        raise InvalidSpecError("generator targets must be positive (lams non-negative)")
    rng = np.random.default_rng(seed)
    ax = _spread_diag(rng, dx, cond_x * mu_x)
    by = _spread_diag(rng, dy, cond_y * mu_y)
    a_vec = lin_scale * rng.standard_normal(dx)
    b_vec = lin_scale * rng.standard_normal(dy)
    if dense:
        f = QuadraticOracle(_rotate(rng, ax), a_vec, lmax=float(ax.max()))
        g = QuadraticOracle(_rotate(rng, by), b_vec, lmax=float(by.max()))
    else:
        f = QuadraticOracle(ax, a_vec, lmax=float(ax.max()))
        g = QuadraticOracle(by, b_vec, lmax=float(by.max()))
    c_mat = _scaled_matrix(rng, dy, dx, lxy)
    bh = lin_scale * rng.standard_normal(dy)
    ch = lin_scale * rng.standard_normal(dx)
    if lxx > 0 or lyy > 0:
        p = _spread_diag(rng, dx, lxx)
        q = _spread_diag(rng, dy, lyy)
        h = QuadraticCoupling(c_mat, p, q, bh, ch, norms=(lxx, lxy, lyy))
    else:
        h = BilinearCoupling(c_mat, bh, ch, opnorm=lxy)
    return SeparableMinimaxProblem(f, g, h, mu_x, mu_y)


def gen_quadratic_finitesum(n: int, d: int, *, beta: float = 0.0, lbar: float = 10.0,
                            mu: float = 1.0, seed: int = 0,
                            lin_scale: float = 1.0) -> FiniteSumProblem:
    """Seeded finite-sum quadratic with smoothness profile L_i = lbar * i^beta."""
    if n < 1 or mu <= 0 or lbar < 0:
        raise InvalidSpecError("need n >= 1, mu > 0, lbar >= 0")
    rng = np.random.default_rng(seed)
    summands = []
    for i in range(1, n + 1):
        li = lbar * float(i) ** beta
        diag = _spread_diag(rng, d, li)
        a_vec = lin_scale * rng.standard_normal(d)
        summands.append(QuadraticOracle(diag, a_vec, lmax=li))
    return FiniteSumProblem(summands, mu)


def gen_aggregate_only_finitesum(n: int, d: int, *, scale: float = 4.0, seed: int = 0,
                                 lin_scale: float = 1.0):
    """Rank-one summands, individually *not* strongly convex.

    Each f_i(x) = 0.5 * scale * (w_i^T x)^2 + <a_i, x>; the aggregate Hessian
    is made positive definite by spreading the w_i across coordinates.
    Returns (problem_with_mu_zero_summands, aggregate_mu) where the problem's
    own ``mu`` field is 0-free: summands are plain convex, and ``aggregate_mu``
    is the exact smallest eigenvalue of the mean Hessian.
    """
    rng = np.random.default_rng(seed)
    ws = []
    for i in range(n):
        w = 0.25 * rng.standard_normal(d)
        w[i % d] += 1.0
        ws.append(w)
    summands = []
    agg = np.zeros((d, d))
    for w in ws:
        mat = scale * np.outer(w, w)
        agg += mat / n
        a_vec = lin_scale * rng.standard_normal(d)
        summands.append(QuadraticOracle(mat, a_vec, lmax=scale * float(w @ w)))
    mu_agg = float(np.linalg.eigvalsh(agg).min())
    if mu_agg <= 0:
        raise InvalidSpecError("aggregate not strongly convex; need n >= d")
    return summands, mu_agg


def gen_aggregate_only_mmfs(n: int, dx: int, dy: int, *, scale: float = 4.0,
                            lam_scale: float = 0.5, seed: int = 0, lin_scale: float = 1.0):
    """Rank-one f_i/g_i (individually not strongly convex), bilinear couplings.

    Returns (fs, gs, hs, mu_x, mu_y) with the moduli the exact smallest
    eigenvalues of the mean Hessians; the saddle objective carries *no*
    explicit regularizer.  Feeds the minimax reduction tests.
    """
    rng = np.random.default_rng(seed)

    def rank_one_family(d):
        mats, oracles = np.zeros((d, d)), []
        for i in range(n):
            w = 0.25 * rng.standard_normal(d)
            w[i % d] += 1.0
            mat = scale * np.outer(w, w)
            mats += mat / n
            oracles.append(QuadraticOracle(mat, lin_scale * rng.standard_normal(d),
                                           lmax=scale * float(w @ w)))
        mu = float(np.linalg.eigvalsh(mats).min())
        if mu <= 0:
            raise InvalidSpecError("aggregate not strongly convex; need n >= dim")
        return oracles, mu

    fs, mu_x = rank_one_family(dx)
    gs, mu_y = rank_one_family(dy)
    hs = []
    for _ in range(n):
        lxy = lam_scale * (0.5 + rng.random())
        hs.append(BilinearCoupling(_scaled_matrix(rng, dy, dx, lxy),
                                   lin_scale * rng.standard_normal(dy),
                                   lin_scale * rng.standard_normal(dx), opnorm=lxy))
    return fs, gs, hs, mu_x, mu_y


def gen_quadratic_mmfs(n: int, dx: int, dy: int, *, cond_x: float = 4.0, cond_y: float = 4.0,
                       lam_scale: float = 1.0, mu_x: float = 1.0, mu_y: float = 1.0,
                       seed: int = 0, lin_scale: float = 1.0,
                       with_hquad: bool = False) -> MinimaxFiniteSumProblem:
    """Seeded minimax-finite-sum quadratic with per-summand exact constants."""
    if n < 1 or min(mu_x, mu_y) <= 0:
        raise InvalidSpecError("need n >= 1 and positive moduli")
    rng = np.random.default_rng(seed)
    fs, gs, hs = [], [], []
    for i in range(n):
        lx = cond_x * mu_x * (0.5 + rng.random())
        ly = cond_y * mu_y * (0.5 + rng.random())
        fs.append(QuadraticOracle(_spread_diag(rng, dx, lx), lin_scale * rng.standard_normal(dx), lmax=lx))
        gs.append(QuadraticOracle(_spread_diag(rng, dy, ly), lin_scale * rng.standard_normal(dy), lmax=ly))
        lxy = lam_scale * (0.5 + rng.random())
        c_mat = _scaled_matrix(rng, dy, dx, lxy)
        bh = lin_scale * rng.standard_normal(dy)
        ch = lin_scale * rng.standard_normal(dx)
        if with_hquad:
            lxx = 0.5 * lam_scale * rng.random()
            lyy = 0.5 * lam_scale * rng.random()
            hs.append(QuadraticCoupling(c_mat, _spread_diag(rng, dx, lxx),
                                        _spread_diag(rng, dy, lyy), bh, ch,
                                        norms=(lxx, lxy, lyy)))
        else:
            hs.append(BilinearCoupling(c_mat, bh, ch, opnorm=lxy))
    return MinimaxFiniteSumProblem(fs, gs, hs, mu_x, mu_y)
