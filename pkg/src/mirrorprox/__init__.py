"""Primal-dual extragradient solvers for separable minimax, finite-sum, and
minimax-finite-sum optimization, with exact-oracle quadratic test instances,
baselines, and a benchmark/verification CLI."""

from .core import (DiscreteDistribution, SeededRng, as_vec, bregman_euclidean,
                   conjugate_divergence, sample_index)
from .oracles import (BilinearCoupling, CouplingOracle, QuadraticCoupling,
                      QuadraticOracle, SmoothConvexOracle, TiltedOracle, ZeroCoupling,
                      ZeroOracle)
from .problems import (FiniteSumProblem, MinimaxFiniteSumProblem,
                       SeparableMinimaxProblem, finite_sum_gradient, mm_gap_oracle_hook,
                       require_valid, validate)
from .minimax import (MinimaxState, iteration_budget_mm, lambda_mm, mm_step,
                      potential_mm, solve_minimax)
from .finitesum import (FsSchedule, FsState, fs_one_phase, lambda_fs, potential_fs,
                        sampling_p, solve_finitesum)
from .mmfs import (AnchorCache, MmfsState, lambda_h, mmfs_inner, potential_mmfs,
                   sampling_pqr, schedule_mmfs, solve_mmfs)
from .reductions import redx_convex, redx_minimax
from .testbed import (ExactSolution, duality_gap_quadratic, exact_min, exact_saddle,
                      gen_quadratic_finitesum, gen_quadratic_minimax, gen_quadratic_mmfs,
                      mmfs_duality_gap)
from .qmm import read_qmm, write_qmm
from .suites import run_all, run_suite

__version__ = "0.1.0"
