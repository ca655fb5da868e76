"""First-order oracles: smooth convex summands and convex-concave couplings.

Oracles *declare* their regularity constants (smoothness, blockwise coupling
bounds) rather than estimating them; the step-size schedules trust these
numbers.  The quadratic oracles used by the testbed carry exact constants and
optional explicit conjugates; black-box user oracles only need value/gradient
plus declared constants.
"""

from __future__ import annotations

import numpy as np

from .core import as_vec
from .errors import DimMismatchError, NonFiniteConstantError, SingularSystemError

__all__ = [
    "SmoothConvexOracle",
    "CouplingOracle",
    "QuadraticOracle",
    "ZeroOracle",
    "TiltedOracle",
    "BilinearCoupling",
    "QuadraticCoupling",
    "ZeroCoupling",
    "power_iteration_norm",
]


def power_iteration_norm(m: np.ndarray, iters: int = 30, tol: float = 1e-6) -> float:
    """Largest eigenvalue of symmetric PSD ``m`` by power iteration.

    Runs at most ``iters`` steps, stopping early when the Rayleigh quotient
    stabilizes to ``tol`` relative.  The estimate converges from below, so it
    is inflated by a small multiple of ``tol`` to keep declared constants on
    the safe side of the true spectrum.
    """
    m = np.asarray(m, dtype=np.float64)
    n = m.shape[0]
    if n == 0:
        return 0.0
    v = np.ones(n) / np.sqrt(n)
    lam = 0.0
    for _ in range(iters):
        w = m @ v
        norm = float(np.linalg.norm(w))
        if norm == 0.0:
            return 0.0
        v = w / norm
        new_lam = float(v @ (m @ v))
        if lam > 0 and abs(new_lam - lam) <= tol * abs(new_lam):
            lam = new_lam
            break
        lam = new_lam
    return lam * (1.0 + 10.0 * tol)


def operator_norm(c: np.ndarray, iters: int = 30, tol: float = 1e-6) -> float:
    """Spectral norm of a (possibly rectangular) matrix via ``c^T c``."""
    c = np.asarray(c, dtype=np.float64)
    if c.size == 0:
        return 0.0
    return float(np.sqrt(power_iteration_norm(c.T @ c, iters=iters, tol=tol)))


class SmoothConvexOracle:
    """A differentiable convex summand.

    Subclasses provide ``value`` and ``gradient`` and set ``dim`` and
    ``smoothness`` (the Lipschitz constant of the gradient).  When an explicit
    conjugate is available (``has_conjugate``), ``conjugate_value`` and
    ``conjugate_gradient`` evaluate it; solvers never need this, only the
    generic-engine equivalence checks do.
    """

    dim: int
    smoothness: float
    has_conjugate: bool = False

    def value(self, x: np.ndarray) -> float:
        raise NotImplementedError

    def gradient(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def conjugate_value(self, p: np.ndarray) -> float:
        raise NotImplementedError("oracle has no explicit conjugate")

    def conjugate_gradient(self, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError("oracle has no explicit conjugate")


class QuadraticOracle(SmoothConvexOracle):
    """f(x) = 0.5 x^T A x + a^T x for symmetric PSD ``A`` (dense or diagonal).

    ``smoothness`` is the exact largest eigenvalue when known (diagonal input,
    or ``lmax`` passed by a generator that built the spectrum), otherwise a
    power-iteration estimate.  When ``A`` is invertible the conjugate
    f*(p) = 0.5 (p-a)^T A^{-1} (p-a) is exposed.
    """

    def __init__(self, a_mat, a_vec=None, lmax: float | None = None) -> None:
        a_mat = np.asarray(a_mat, dtype=np.float64)
        if a_mat.ndim == 1:
            self.diag = a_mat.copy()
            self.mat = None
            self.dim = a_mat.shape[0]
            exact = float(self.diag.max()) if self.dim else 0.0
            self.smoothness = exact if lmax is None else float(lmax)
        elif a_mat.ndim == 2:
            if a_mat.shape[0] != a_mat.shape[1]:
                raise DimMismatchError("quadratic matrix must be square")
            asym = float(np.max(np.abs(a_mat - a_mat.T))) if a_mat.size else 0.0
            if asym > 1e-12 * max(1.0, float(np.max(np.abs(a_mat))) if a_mat.size else 1.0):
                raise ValueError(f"matrix is not symmetric (max asymmetry {asym:g})")
            self.diag = None
            self.mat = 0.5 * (a_mat + a_mat.T)
            self.dim = a_mat.shape[0]
            self.smoothness = float(lmax) if lmax is not None else power_iteration_norm(self.mat)
        else:
            raise DimMismatchError("quadratic matrix must be 1-D (diagonal) or 2-D")
        self.lin = np.zeros(self.dim) if a_vec is None else as_vec(a_vec, self.dim)
        if not np.isfinite(self.smoothness):
            raise NonFiniteConstantError("non-finite smoothness constant")
        self._inv_factor = None

    # -- primal side ------------------------------------------------------
    def value(self, x: np.ndarray) -> float:
        if self.diag is not None:
            return 0.5 * float(x @ (self.diag * x)) + float(self.lin @ x)
        return 0.5 * float(x @ (self.mat @ x)) + float(self.lin @ x)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        if self.diag is not None:
            return self.diag * x + self.lin
        return self.mat @ x + self.lin

    # -- conjugate side ---------------------------------------------------
    @property
    def has_conjugate(self) -> bool:  # type: ignore[override]
        if self.diag is not None:
            return bool(np.all(self.diag > 0))
        return bool(np.all(np.linalg.eigvalsh(self.mat) > 0)) if self.dim else True

    def _apply_inverse(self, v: np.ndarray) -> np.ndarray:
        if self.diag is not None:
            if np.any(self.diag <= 0):
                raise SingularSystemError("quadratic is not positive definite")
            return v / self.diag
        try:
            if self._inv_factor is None:
                self._inv_factor = np.linalg.inv(self.mat)
            return self._inv_factor @ v
        except np.linalg.LinAlgError as exc:  # pragma: no cover - defensive
            raise SingularSystemError(str(exc)) from exc

    def conjugate_value(self, p: np.ndarray) -> float:
        d = p - self.lin
        return 0.5 * float(d @ self._apply_inverse(d))

    def conjugate_gradient(self, p: np.ndarray) -> np.ndarray:
        return self._apply_inverse(p - self.lin)


class ZeroOracle(SmoothConvexOracle):
    """The zero function; 0-smooth.  No conjugate (f* is an indicator)."""

    def __init__(self, dim: int) -> None:
        self.dim = int(dim)
        self.smoothness = 0.0

    def value(self, x: np.ndarray) -> float:
        return 0.0

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return np.zeros(self.dim)


class TiltedOracle(SmoothConvexOracle):
    """base(x) + 0.5*quad*||x||^2 + <lin, x>; used by the outer reductions.

    The linear tilt leaves ``smoothness`` untouched; the ridge adds ``quad``.
    """

    def __init__(self, base: SmoothConvexOracle, quad: float = 0.0, lin=None) -> None:
        self.base = base
        self.quad = float(quad)
        self.dim = base.dim
        self.lin = np.zeros(self.dim) if lin is None else as_vec(lin, self.dim)
        self.smoothness = base.smoothness + self.quad

    def value(self, x: np.ndarray) -> float:
        return self.base.value(x) + 0.5 * self.quad * float(x @ x) + float(self.lin @ x)

    def gradient(self, x: np.ndarray) -> np.ndarray:
        return self.base.gradient(x) + self.quad * x + self.lin


class CouplingOracle:
    """A differentiable convex-concave coupling h(x, y).

    Subclasses provide the block gradients and declare the blockwise
    Lipschitz constants ``lip_xx``, ``lip_xy``, ``lip_yy``.  ``value`` is
    optional (None when unavailable); only gap evaluation wants it.
    """

    dim_x: int
    dim_y: int
    lip_xx: float
    lip_xy: float
    lip_yy: float
    has_value: bool = False

    def grad_x(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def grad_y(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def value(self, x: np.ndarray, y: np.ndarray) -> float:
        raise NotImplementedError("coupling has no value oracle")


class BilinearCoupling(CouplingOracle):
    """h(x, y) = y^T C x - <b, y> + <c, x>; lip_xx = lip_yy = 0."""

    has_value = True

    def __init__(self, c_mat, b_vec=None, c_vec=None, opnorm: float | None = None) -> None:
        self.c_mat = np.asarray(c_mat, dtype=np.float64)
        if self.c_mat.ndim != 2:
            raise DimMismatchError("coupling matrix must be 2-D")
        self.dim_y, self.dim_x = self.c_mat.shape
        self.b_vec = np.zeros(self.dim_y) if b_vec is None else as_vec(b_vec, self.dim_y)
        self.c_vec = np.zeros(self.dim_x) if c_vec is None else as_vec(c_vec, self.dim_x)
        self.lip_xx = 0.0
        self.lip_yy = 0.0
        self.lip_xy = float(opnorm) if opnorm is not None else operator_norm(self.c_mat)

    def grad_x(self, x, y):
        return self.c_mat.T @ y + self.c_vec

    def grad_y(self, x, y):
        return self.c_mat @ x - self.b_vec

    def value(self, x, y):
        return float(y @ (self.c_mat @ x)) - float(self.b_vec @ y) + float(self.c_vec @ x)


class QuadraticCoupling(CouplingOracle):
    """h = y^T C x + 0.5 x^T P x - 0.5 y^T Q y - <b, y> + <c, x>.

    ``P`` and ``Q`` are symmetric PSD (diagonal arrays accepted), giving
    lip_xx = ||P||, lip_yy = ||Q||, lip_xy = ||C||.
    """

    has_value = True

    def __init__(self, c_mat, p_mat=None, q_mat=None, b_vec=None, c_vec=None,
                 norms: tuple[float, float, float] | None = None) -> None:
        self.c_mat = np.asarray(c_mat, dtype=np.float64)
        self.dim_y, self.dim_x = self.c_mat.shape

        def _prep(m, d):
            if m is None:
                return None
            m = np.asarray(m, dtype=np.float64)
            if m.ndim == 1:
                if m.shape[0] != d:
                    raise DimMismatchError("coupling quadratic block has wrong dim")
                return m
            if m.shape != (d, d):
                raise DimMismatchError("coupling quadratic block has wrong shape")
            return 0.5 * (m + m.T)

        self.p_mat = _prep(p_mat, self.dim_x)
        self.q_mat = _prep(q_mat, self.dim_y)
        self.b_vec = np.zeros(self.dim_y) if b_vec is None else as_vec(b_vec, self.dim_y)
        self.c_vec = np.zeros(self.dim_x) if c_vec is None else as_vec(c_vec, self.dim_x)
        if norms is not None:
            self.lip_xx, self.lip_xy, self.lip_yy = (float(v) for v in norms)
        else:
            self.lip_xx = _psd_norm(self.p_mat)
            self.lip_yy = _psd_norm(self.q_mat)
            self.lip_xy = operator_norm(self.c_mat)

    def grad_x(self, x, y):
        g = self.c_mat.T @ y + self.c_vec
        if self.p_mat is not None:
            g = g + (self.p_mat * x if self.p_mat.ndim == 1 else self.p_mat @ x)
        return g

    def grad_y(self, x, y):
        g = self.c_mat @ x - self.b_vec
        if self.q_mat is not None:
            g = g - (self.q_mat * y if self.q_mat.ndim == 1 else self.q_mat @ y)
        return g

    def value(self, x, y):
        v = float(y @ (self.c_mat @ x)) - float(self.b_vec @ y) + float(self.c_vec @ x)
        if self.p_mat is not None:
            px = self.p_mat * x if self.p_mat.ndim == 1 else self.p_mat @ x
            v += 0.5 * float(x @ px)
        if self.q_mat is not None:
            qy = self.q_mat * y if self.q_mat.ndim == 1 else self.q_mat @ y
            v -= 0.5 * float(y @ qy)
        return v


def _psd_norm(m) -> float:
    if m is None:
        return 0.0
    if m.ndim == 1:
        return float(m.max()) if m.size else 0.0
    return power_iteration_norm(m)


class ZeroCoupling(CouplingOracle):
    """h identically zero."""

    has_value = True

    def __init__(self, dim_x: int, dim_y: int) -> None:
        self.dim_x = int(dim_x)
        self.dim_y = int(dim_y)
        self.lip_xx = self.lip_xy = self.lip_yy = 0.0

    def grad_x(self, x, y):
        return np.zeros(self.dim_x)

    def grad_y(self, x, y):
        return np.zeros(self.dim_y)

    def value(self, x, y):
        return 0.0
