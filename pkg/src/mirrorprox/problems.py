"""Problem descriptors for the three solver families, plus validation.

A descriptor owns its oracles and every regularity constant the schedules
consume.  The strong-convexity moduli ``mu_*`` are the *explicit* quadratic
regularizers of the objective (the oracles hold the unregularized parts):

* separable minimax:   f(x) + h(x,y) - g(y) + mu_x/2 |x|^2 - mu_y/2 |y|^2
* finite sum:          (1/n) sum_i f_i(x) + mu/2 |x|^2
* minimax finite sum:  (1/n) sum_i [f_i + h_i - g_i] + mu_x/2 |x|^2 - mu_y/2 |y|^2

Descriptors are immutable after construction and safe to share; oracle
evaluation must be reentrant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidProblemError
from .oracles import CouplingOracle, QuadraticOracle, QuadraticCoupling, SmoothConvexOracle

__all__ = [
    "Diagnostic",
    "SeparableMinimaxProblem",
    "FiniteSumProblem",
    "MinimaxFiniteSumProblem",
    "validate",
    "require_valid",
    "finite_sum_gradient",
    "mm_gap_oracle_hook",
]


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding: a spec-level error code plus human detail."""

    code: str  # NonPositiveModulus | DimMismatch | NonFiniteConstant
    detail: str

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


class SeparableMinimaxProblem:
    def __init__(self, f: SmoothConvexOracle, g: SmoothConvexOracle,
                 h: CouplingOracle, mu_x: float, mu_y: float) -> None:
        self.f = f
        self.g = g
        self.h = h
        self.mu_x = float(mu_x)
        self.mu_y = float(mu_y)

    @property
    def dim_x(self) -> int:
        return self.f.dim

    @property
    def dim_y(self) -> int:
        return self.g.dim

    def objective(self, x: np.ndarray, y: np.ndarray) -> float:
        """Regularized saddle objective; requires a coupling value oracle."""
        return (self.f.value(x) + self.h.value(x, y) - self.g.value(y)
                + 0.5 * self.mu_x * float(x @ x) - 0.5 * self.mu_y * float(y @ y))

    def kappa(self) -> float:
        """Condition measure driving the iteration count."""
        return (math.sqrt(self.f.smoothness / self.mu_x)
                + math.sqrt(self.g.smoothness / self.mu_y)
                + self.h.lip_xx / self.mu_x
                + self.h.lip_xy / math.sqrt(self.mu_x * self.mu_y)
                + self.h.lip_yy / self.mu_y)


class FiniteSumProblem:
    def __init__(self, summands, mu: float) -> None:
        self.summands = list(summands)
        self.mu = float(mu)

    @property
    def n(self) -> int:
        return len(self.summands)

    @property
    def dim(self) -> int:
        return self.summands[0].dim

    @property
    def smoothness_list(self) -> np.ndarray:
        return np.array([s.smoothness for s in self.summands])

    def objective(self, x: np.ndarray) -> float:
        v = sum(s.value(x) for s in self.summands) / self.n
        return v + 0.5 * self.mu * float(x @ x)

    def kappa(self) -> float:
        ls = self.smoothness_list
        return self.n + float(np.sqrt(ls).sum()) / math.sqrt(self.n * self.mu)


class MinimaxFiniteSumProblem:
    def __init__(self, fs, gs, hs, mu_x: float, mu_y: float) -> None:
        self.fs = list(fs)
        self.gs = list(gs)
        self.hs = list(hs)
        self.mu_x = float(mu_x)
        self.mu_y = float(mu_y)

    @property
    def n(self) -> int:
        return len(self.fs)

    @property
    def dim_x(self) -> int:
        return self.fs[0].dim

    @property
    def dim_y(self) -> int:
        return self.gs[0].dim

    def lx_list(self) -> np.ndarray:
        return np.array([f.smoothness for f in self.fs])

    def ly_list(self) -> np.ndarray:
        return np.array([g.smoothness for g in self.gs])

    def lam_tot_list(self) -> np.ndarray:
        """Per-summand coupling measure: Lxx_i/mu_x + Lxy_i/sqrt(mu_x mu_y) + Lyy_i/mu_y."""
        root = math.sqrt(self.mu_x * self.mu_y)
        return np.array([h.lip_xx / self.mu_x + h.lip_xy / root + h.lip_yy / self.mu_y
                         for h in self.hs])

    def objective(self, x: np.ndarray, y: np.ndarray) -> float:
        v = sum(f.value(x) + h.value(x, y) - g.value(y)
                for f, g, h in zip(self.fs, self.gs, self.hs)) / self.n
        return v + 0.5 * self.mu_x * float(x @ x) - 0.5 * self.mu_y * float(y @ y)

    def kappa(self) -> float:
        per = (np.sqrt(self.lx_list() / self.mu_x)
               + np.sqrt(self.ly_list() / self.mu_y) + self.lam_tot_list())
        return self.n + float(per.sum()) / math.sqrt(self.n)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _check_constant(out, name, value) -> None:
    if not np.isfinite(value):
        out.append(Diagnostic("NonFiniteConstant", f"{name} = {value!r}"))
    elif value < 0:
        out.append(Diagnostic("NonFiniteConstant", f"{name} = {value!r} is negative"))


def _check_modulus(out, name, value) -> None:
    if not np.isfinite(value):
        out.append(Diagnostic("NonFiniteConstant", f"{name} = {value!r}"))
    elif value <= 0:
        out.append(Diagnostic("NonPositiveModulus", f"{name} = {value!r} must be > 0"))


def validate(problem) -> list[Diagnostic]:
    """Structural checks; returns an empty list when the descriptor is usable."""
    out: list[Diagnostic] = []
    if isinstance(problem, SeparableMinimaxProblem):
        _check_modulus(out, "mu_x", problem.mu_x)
        _check_modulus(out, "mu_y", problem.mu_y)
        _check_constant(out, "L_x", problem.f.smoothness)
        _check_constant(out, "L_y", problem.g.smoothness)
        for name in ("lip_xx", "lip_xy", "lip_yy"):
            _check_constant(out, name, getattr(problem.h, name))
        if problem.f.dim != problem.h.dim_x:
            out.append(Diagnostic(
                "DimMismatch", f"f dim {problem.f.dim} vs coupling dx {problem.h.dim_x}"))
        if problem.g.dim != problem.h.dim_y:
            out.append(Diagnostic(
                "DimMismatch", f"g dim {problem.g.dim} vs coupling dy {problem.h.dim_y}"))
    elif isinstance(problem, FiniteSumProblem):
        _check_modulus(out, "mu", problem.mu)
        if problem.n < 1:
            out.append(Diagnostic("DimMismatch", "need at least one summand"))
            return out
        d = problem.summands[0].dim
        for i, s in enumerate(problem.summands):
            _check_constant(out, f"L[{i}]", s.smoothness)
            if s.dim != d:
                out.append(Diagnostic("DimMismatch", f"summand {i} dim {s.dim} vs {d}"))
    elif isinstance(problem, MinimaxFiniteSumProblem):
        _check_modulus(out, "mu_x", problem.mu_x)
        _check_modulus(out, "mu_y", problem.mu_y)
        if not (len(problem.fs) == len(problem.gs) == len(problem.hs)) or problem.n < 1:
            out.append(Diagnostic(
                "DimMismatch",
                f"summand lists have lengths {len(problem.fs)}/{len(problem.gs)}/{len(problem.hs)}"))
            return out
        dx, dy = problem.fs[0].dim, problem.gs[0].dim
        for i, (f, g, h) in enumerate(zip(problem.fs, problem.gs, problem.hs)):
            _check_constant(out, f"Lx[{i}]", f.smoothness)
            _check_constant(out, f"Ly[{i}]", g.smoothness)
            for name in ("lip_xx", "lip_xy", "lip_yy"):
                _check_constant(out, f"{name}[{i}]", getattr(h, name))
            if f.dim != dx or h.dim_x != dx:
                out.append(Diagnostic("DimMismatch", f"summand {i} x-dims inconsistent"))
            if g.dim != dy or h.dim_y != dy:
                out.append(Diagnostic("DimMismatch", f"summand {i} y-dims inconsistent"))
    else:
        raise TypeError(f"not a problem descriptor: {type(problem)!r}")
    return out


def require_valid(problem) -> None:
    diags = validate(problem)
    if diags:
        raise InvalidProblemError(diags)


# ---------------------------------------------------------------------------
# derived oracles
# ---------------------------------------------------------------------------

def finite_sum_gradient(problem: FiniteSumProblem, x: np.ndarray) -> np.ndarray:
    """Full regularized gradient (1/n) sum_i grad f_i(x) + mu x."""
    if x.shape[0] != problem.dim:
        raise_dim = Diagnostic("DimMismatch", f"x dim {x.shape[0]} vs {problem.dim}")
        raise InvalidProblemError([raise_dim])
    g = np.zeros(problem.dim)
    for s in problem.summands:
        g += s.gradient(x)
    return g / problem.n + problem.mu * x


def mm_gap_oracle_hook(problem: SeparableMinimaxProblem):
    """Closed-form duality-gap evaluator, when the instance supports one.

    Quadratic f/g plus a (bilinear or quadratic) coupling admit exact best
    responses via two linear solves; anything else returns None and callers
    fall back on reference-solution potentials.
    """
    from .testbed import duality_gap_quadratic  # cycle-free at call time

    if not isinstance(problem.f, QuadraticOracle) or not isinstance(problem.g, QuadraticOracle):
        return None
    if not isinstance(problem.h, (QuadraticCoupling,)) and not _is_bilinear(problem.h):
        return None

    def gap(x: np.ndarray, y: np.ndarray) -> float:
        return duality_gap_quadratic(problem, x, y)

    return gap


def _is_bilinear(h) -> bool:
    from .oracles import BilinearCoupling, ZeroCoupling

    return isinstance(h, (BilinearCoupling, ZeroCoupling))
