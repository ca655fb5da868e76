"""The ``qmm`` quadratic problem file format.

Self-describing text.  First line: ``qmm dx dy n`` (n = 1 for plain minimax,
dy = 0 for a pure finite sum).  Then n summand blocks, each holding, one row
per line with whitespace-separated floats:

* symmetric matrix A (dx rows) and vector a (1 row)  — the f-part
* symmetric matrix B (dy rows) and vector b (1 row)  — the g-part
* coupling matrix C (dy rows of dx entries)          — h(x,y) = y^T C x

(B, b, C are omitted entirely when dy = 0.)  After the blocks one final line
``mu_x mu_y`` (mu_y = 0 allowed only when dy = 0).  Lines starting with ``#``
are comments.  A and B must be symmetric to 1e-12 (relative to the largest
entry); parsing rejects violations.  Smoothness and coupling norms of parsed
dense matrices are estimated by power iteration (30 iterations, 1e-6), with
a small inflation so declared constants stay above the true spectrum.

Couplings with quadratic blocks (lip_xx/lip_yy > 0) have no slot in this
format; writing such an instance is rejected rather than silently folding
the blocks into A and B, which would change the declared constant split.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidSpecError, NonPositiveModulusError
from .oracles import BilinearCoupling, QuadraticOracle
from .problems import FiniteSumProblem, MinimaxFiniteSumProblem, SeparableMinimaxProblem
from .testbed import coupling_data, quad_data

__all__ = ["QmmFile", "parse_qmm", "read_qmm", "write_qmm", "format_qmm"]


class QmmFile:
    """Parsed payload: raw arrays plus views as the three problem kinds."""

    def __init__(self, dx, dy, n, a_mats, a_vecs, b_mats, b_vecs, c_mats, mu_x, mu_y):
        self.dx, self.dy, self.n = dx, dy, n
        self.a_mats, self.a_vecs = a_mats, a_vecs
        self.b_mats, self.b_vecs = b_mats, b_vecs
        self.c_mats = c_mats
        self.mu_x, self.mu_y = mu_x, mu_y

    def _f_oracles(self):
        return [QuadraticOracle(m, v) for m, v in zip(self.a_mats, self.a_vecs)]

    def _g_oracles(self):
        return [QuadraticOracle(m, v) for m, v in zip(self.b_mats, self.b_vecs)]

    def as_finite_sum(self) -> FiniteSumProblem:
        if self.dy != 0:
            raise InvalidSpecError("file has a y side; not a pure finite sum")
        if self.mu_x <= 0:
            raise NonPositiveModulusError("mu_x must be positive")
        return FiniteSumProblem(self._f_oracles(), self.mu_x)

    def as_minimax(self) -> SeparableMinimaxProblem:
        if self.n != 1 or self.dy == 0:
            raise InvalidSpecError("separable minimax view needs n = 1 and dy > 0")
        return SeparableMinimaxProblem(
            self._f_oracles()[0], self._g_oracles()[0],
            BilinearCoupling(self.c_mats[0]), self.mu_x, self.mu_y)

    def as_mmfs(self) -> MinimaxFiniteSumProblem:
        if self.dy == 0:
            raise InvalidSpecError("minimax finite sum view needs dy > 0")
        hs = [BilinearCoupling(c) for c in self.c_mats]
        return MinimaxFiniteSumProblem(self._f_oracles(), self._g_oracles(), hs,
                                       self.mu_x, self.mu_y)


def _check_symmetric(m: np.ndarray, what: str) -> None:
    if m.size == 0:
        return
    scale = max(1.0, float(np.max(np.abs(m))))
    asym = float(np.max(np.abs(m - m.T)))
    if asym > 1e-12 * scale:
        raise InvalidSpecError(f"{what} is not symmetric (max asymmetry {asym:g})")


def parse_qmm(text: str) -> QmmFile:
    lines = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in lines if ln and not ln.startswith("#")]
    if not rows:
        raise InvalidSpecError("empty qmm file")
    head = rows[0].split()
    if len(head) != 4 or head[0] != "qmm":
        raise InvalidSpecError(f"bad header line: {rows[0]!r}")
    try:
        dx, dy, n = int(head[1]), int(head[2]), int(head[3])
    except ValueError as exc:
        raise InvalidSpecError(f"bad header integers: {rows[0]!r}") from exc
    if dx < 1 or dy < 0 or n < 1:
        raise InvalidSpecError(f"need dx >= 1, dy >= 0, n >= 1; got {dx}, {dy}, {n}")

    pos = 1

    def take_row(width: int, what: str) -> np.ndarray:
        nonlocal pos
        if pos >= len(rows):
            raise InvalidSpecError(f"unexpected end of file reading {what}")
        try:
            vals = np.array([float(t) for t in rows[pos].split()])
        except ValueError as exc:
            raise InvalidSpecError(f"bad float in {what}: {rows[pos]!r}") from exc
        if vals.size != width:
            raise InvalidSpecError(f"{what}: expected {width} entries, got {vals.size}")
        pos += 1
        return vals

    def take_matrix(nrows: int, ncols: int, what: str) -> np.ndarray:
        return (np.stack([take_row(ncols, what) for _ in range(nrows)])
                if nrows else np.zeros((0, ncols)))

    a_mats, a_vecs, b_mats, b_vecs, c_mats = [], [], [], [], []
    for i in range(n):
        a = take_matrix(dx, dx, f"A[{i}]")
        _check_symmetric(a, f"A[{i}]")
        a_mats.append(a)
        a_vecs.append(take_row(dx, f"a[{i}]"))
        if dy:
            b = take_matrix(dy, dy, f"B[{i}]")
            _check_symmetric(b, f"B[{i}]")
            b_mats.append(b)
            b_vecs.append(take_row(dy, f"b[{i}]"))
            c_mats.append(take_matrix(dy, dx, f"C[{i}]"))
    mus = take_row(2, "mu line")
    if pos != len(rows):
        raise InvalidSpecError(f"{len(rows) - pos} trailing non-comment line(s)")
    mu_x, mu_y = float(mus[0]), float(mus[1])
    if mu_x <= 0:
        raise NonPositiveModulusError(f"mu_x = {mu_x!r} must be positive")
    if dy and mu_y <= 0:
        raise NonPositiveModulusError(f"mu_y = {mu_y!r} must be positive when dy > 0")
    return QmmFile(dx, dy, n, a_mats, a_vecs, b_mats, b_vecs, c_mats, mu_x, mu_y)


def read_qmm(path) -> QmmFile:
    with open(path) as fh:
        return parse_qmm(fh.read())


def _fmt_row(vals) -> str:
    return " ".join(repr(float(v)) for v in np.atleast_1d(vals))


def format_qmm(problem) -> str:
    """Serialize a quadratic-family problem; bilinear couplings only."""
    if isinstance(problem, FiniteSumProblem):
        dx, dy, n = problem.dim, 0, problem.n
        fs = problem.summands
        gs = hs = None
        mu_x, mu_y = problem.mu, 0.0
    elif isinstance(problem, SeparableMinimaxProblem):
        dx, dy, n = problem.dim_x, problem.dim_y, 1
        fs, gs, hs = [problem.f], [problem.g], [problem.h]
        mu_x, mu_y = problem.mu_x, problem.mu_y
    elif isinstance(problem, MinimaxFiniteSumProblem):
        dx, dy, n = problem.dim_x, problem.dim_y, problem.n
        fs, gs, hs = problem.fs, problem.gs, problem.hs
        mu_x, mu_y = problem.mu_x, problem.mu_y
    else:
        raise InvalidSpecError(f"cannot serialize {type(problem)!r}")

    out = [f"qmm {dx} {dy} {n}"]
    for i in range(n):
        a_mat, a_vec = quad_data(fs[i])
        if dy:
            b_mat, b_vec = quad_data(gs[i])
            c_mat, p_mat, q_mat, bh, ch = coupling_data(hs[i])
            if np.any(p_mat) or np.any(q_mat):
                raise InvalidSpecError(
                    "coupling has quadratic blocks; the qmm format only carries "
                    "bilinear couplings")
            # linear coupling terms fold into the separable linear parts
            out.extend(_fmt_row(row) for row in a_mat)
            out.append(_fmt_row(a_vec + ch))
            out.extend(_fmt_row(row) for row in b_mat)
            out.append(_fmt_row(b_vec + bh))
            out.extend(_fmt_row(row) for row in c_mat)
        else:
            out.extend(_fmt_row(row) for row in a_mat)
            out.append(_fmt_row(a_vec))
    out.append(f"{mu_x!r} {mu_y!r}")
    return "\n".join(out) + "\n"


def write_qmm(path, problem) -> None:
    with open(path, "w") as fh:
        fh.write(format_qmm(problem))
