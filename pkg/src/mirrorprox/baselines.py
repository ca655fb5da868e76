"""Deterministic baselines with the same oracle-call accounting as the solvers.

For finite sums (treated as one function, full gradients): plain gradient
descent and Nesterov's accelerated method for strongly convex objectives.
For separable minimax: the classical extragradient method on the primal-dual
gradient operator with the 1/L operator step.  All traces use the shared
record format; a run stops when the call budget is exhausted (flagged as
truncated) or the target is reached.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .problems import FiniteSumProblem, SeparableMinimaxProblem
from .tracing import CountingCoupling, CountingSmoothOracle, OracleCounter, make_record

__all__ = ["BaselineResult", "gradient_descent", "nesterov_agd", "extragradient",
           "baselines"]


@dataclass
class BaselineResult:
    name: str
    x: np.ndarray
    y: np.ndarray | None
    trace: list
    counter: OracleCounter
    truncated: bool


def _fs_full_gradient(problem, x, counter):
    g = np.zeros(problem.dim)
    for s in problem.summands:
        g += CountingSmoothOracle(s, counter, "f").gradient(x)
    return g / problem.n + problem.mu * x


def _fs_smoothness(problem) -> float:
    return problem.mu + float(problem.smoothness_list.mean())


def gradient_descent(problem: FiniteSumProblem, x0, budget: int, *, reference=None,
                     target: float | None = None) -> BaselineResult:
    """Full-gradient descent with the classical 1/L step."""
    lbar = _fs_smoothness(problem)
    counter = OracleCounter()
    t0 = time.monotonic_ns()
    x = np.asarray(x0, dtype=np.float64).copy()
    trace = []

    def sub(xv):
        return (problem.objective(xv) - problem.objective(reference.x)
                if reference is not None else float("nan"))

    trace.append(make_record(0, counter, gap=sub(x), t0=t0))
    truncated = True
    i = 0
    while counter.total + problem.n <= budget:
        i += 1
        x = x - _fs_full_gradient(problem, x, counter) / lbar
        s = sub(x)
        trace.append(make_record(i, counter, gap=s, t0=t0))
        if target is not None and not math.isnan(s) and s <= target:
            truncated = False
            break
    return BaselineResult("gd", x, None, trace, counter, truncated)


def nesterov_agd(problem: FiniteSumProblem, x0, budget: int, *, reference=None,
                 target: float | None = None) -> BaselineResult:
    """Accelerated gradient descent, constant momentum for strong convexity."""
    lbar = _fs_smoothness(problem)
    kappa = lbar / problem.mu
    beta = (math.sqrt(kappa) - 1.0) / (math.sqrt(kappa) + 1.0)
    counter = OracleCounter()
    t0 = time.monotonic_ns()
    x = np.asarray(x0, dtype=np.float64).copy()
    v = x.copy()
    trace = []

    def sub(xv):
        return (problem.objective(xv) - problem.objective(reference.x)
                if reference is not None else float("nan"))

    trace.append(make_record(0, counter, gap=sub(x), t0=t0))
    truncated = True
    i = 0
    while counter.total + problem.n <= budget:
        i += 1
        x_new = v - _fs_full_gradient(problem, v, counter) / lbar
        v = x_new + beta * (x_new - x)
        x = x_new
        s = sub(x)
        trace.append(make_record(i, counter, gap=s, t0=t0))
        if target is not None and not math.isnan(s) and s <= target:
            truncated = False
            break
    return BaselineResult("agd", x, None, trace, counter, truncated)


def extragradient(problem: SeparableMinimaxProblem, x0, y0, budget: int, *,
                  gap_fn=None, target: float | None = None) -> BaselineResult:
    """Classical two-call extragradient on the regularized gradient operator."""
    lop = (max(problem.mu_x + problem.f.smoothness + problem.h.lip_xx,
               problem.mu_y + problem.g.smoothness + problem.h.lip_yy)
           + problem.h.lip_xy)
    eta = 1.0 / lop
    counter = OracleCounter()
    t0 = time.monotonic_ns()
    x = np.asarray(x0, dtype=np.float64).copy()
    y = np.asarray(y0, dtype=np.float64).copy()

    def op(xv, yv):
        f = CountingSmoothOracle(problem.f, counter, "f")
        g = CountingSmoothOracle(problem.g, counter, "g")
        h = CountingCoupling(problem.h, counter)
        gx = f.gradient(xv) + h.grad_x(xv, yv) + problem.mu_x * xv
        gy = g.gradient(yv) - h.grad_y(xv, yv) + problem.mu_y * yv
        return gx, gy

    def gap(xv, yv):
        return gap_fn(xv, yv) if gap_fn is not None else float("nan")

    trace = [make_record(0, counter, gap=gap(x, y), t0=t0)]
    truncated = True
    i = 0
    while counter.total + 8 <= budget:
        i += 1
        gx, gy = op(x, y)
        xh, yh = x - eta * gx, y - eta * gy
        gx, gy = op(xh, yh)
        x, y = x - eta * gx, y - eta * gy
        s = gap(x, y)
        trace.append(make_record(i, counter, gap=s, t0=t0))
        if target is not None and not math.isnan(s) and s <= target:
            truncated = False
            break
    return BaselineResult("xgrad", x, y, trace, counter, truncated)


def baselines(problem, x0, budget: int, *, y0=None, reference=None, gap_fn=None,
              target: float | None = None) -> dict[str, BaselineResult]:
    """Run every baseline applicable to the problem kind."""
    if isinstance(problem, FiniteSumProblem):
        return {
            "gd": gradient_descent(problem, x0, budget, reference=reference, target=target),
            "agd": nesterov_agd(problem, x0, budget, reference=reference, target=target),
        }
    if isinstance(problem, SeparableMinimaxProblem):
        return {"xgrad": extragradient(problem, x0, y0, budget, gap_fn=gap_fn,
                                       target=target)}
    raise TypeError(f"no baselines for {type(problem)!r}")
