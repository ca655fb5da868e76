"""Command-line entry points.

Subcommands: solve-mm, solve-fs, solve-mmfs, reduce-fs, reduce-mmfs, verify,
bench, gen.  Each solve run writes an optional trace file and prints one
summary line carrying the final gap/potential, total oracle calls, and the
derived schedule constants for audit.  Exit codes: 0 success, 1 solver
error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import math
import statistics
import sys

import numpy as np

from .config import ConfigError, RunConfig, parse_config_file, parse_kv_spec
from .core import bregman_euclidean
from .errors import InvalidSpecError, MirrorProxError, UnknownFamilyError
from .finitesum import solve_finitesum
from .minimax import solve_minimax
from .mmfs import solve_mmfs
from .problems import (FiniteSumProblem, MinimaxFiniteSumProblem,
                       SeparableMinimaxProblem, mm_gap_oracle_hook)
from .qmm import read_qmm, write_qmm
from .reductions import fs_subsolver, mmfs_subsolver, redx_convex, redx_minimax
from .suites import SUITE_NAMES, run_all, run_suite
from .testbed import (exact_min, exact_saddle, gen_aggregate_only_finitesum,
                      gen_aggregate_only_mmfs, gen_quadratic_finitesum,
                      gen_quadratic_minimax, gen_quadratic_mmfs, mmfs_duality_gap)
from .tracing import check_trace_invariants, write_trace

__all__ = ["main", "build_problem_from_gen"]


def build_problem_from_gen(spec: str):
    """Instantiate a problem (or reduction inputs) from a generator spec.

    Spec grammar: ``kind:key=value,...`` with kinds mm, fs, mmfs, aggfs,
    aggmm.  See the README for the per-kind keys.
    """
    kind, _, rest = spec.partition(":")
    kv = parse_kv_spec(rest) if rest else {}
    if kind == "mm":
        return gen_quadratic_minimax(
            int(kv.get("dx", 2)), int(kv.get("dy", 2)),
            cond_x=float(kv.get("condx", 10.0)), cond_y=float(kv.get("condy", 10.0)),
            lam_targets=(float(kv.get("lxx", 0.0)), float(kv.get("lxy", 1.0)),
                         float(kv.get("lyy", 0.0))),
            mu_x=float(kv.get("mux", 1.0)), mu_y=float(kv.get("muy", 1.0)),
            seed=int(kv.get("seed", 0)), dense=bool(kv.get("dense", 0)),
            lin_scale=float(kv.get("lin", 1.0)))
    if kind == "fs":
        return gen_quadratic_finitesum(
            int(kv.get("n", 10)), int(kv.get("d", 10)),
            beta=float(kv.get("beta", 0.0)), lbar=float(kv.get("lbar", 10.0)),
            mu=float(kv.get("mu", 1.0)), seed=int(kv.get("seed", 0)),
            lin_scale=float(kv.get("lin", 1.0)))
    if kind == "mmfs":
        return gen_quadratic_mmfs(
            int(kv.get("n", 4)), int(kv.get("dx", 2)), int(kv.get("dy", 2)),
            cond_x=float(kv.get("condx", 4.0)), cond_y=float(kv.get("condy", 4.0)),
            lam_scale=float(kv.get("lam", 1.0)),
            mu_x=float(kv.get("mux", 1.0)), mu_y=float(kv.get("muy", 1.0)),
            seed=int(kv.get("seed", 0)), lin_scale=float(kv.get("lin", 1.0)),
            with_hquad=bool(kv.get("hquad", 0)))
    if kind == "aggfs":
        summands, mu = gen_aggregate_only_finitesum(
            int(kv.get("n", 8)), int(kv.get("d", 4)),
            scale=float(kv.get("scale", 4.0)), seed=int(kv.get("seed", 0)))
        return ("aggfs", summands, mu)
    if kind == "aggmm":
        return ("aggmm",) + gen_aggregate_only_mmfs(
            int(kv.get("n", 3)), int(kv.get("dx", 2)), int(kv.get("dy", 2)),
            scale=float(kv.get("scale", 8.0)), lam_scale=float(kv.get("lam", 0.1)),
            seed=int(kv.get("seed", 0)))
    raise ConfigError(f"unknown generator kind {kind!r}")


def _load_problem(cfg: RunConfig, view: str):
    if cfg.gen is not None:
        built = build_problem_from_gen(cfg.gen)
    else:
        payload = read_qmm(cfg.problem)
        built = {"mm": payload.as_minimax, "fs": payload.as_finite_sum,
                 "mmfs": payload.as_mmfs}[view]()
    expected = {"mm": SeparableMinimaxProblem, "fs": FiniteSumProblem,
                "mmfs": MinimaxFiniteSumProblem}[view]
    if not isinstance(built, expected):
        raise ConfigError(f"problem source does not yield a {view} problem")
    return built


def _merge_config(args) -> RunConfig:
    mapping = parse_config_file(args.config) if args.config else {}
    for key in ("problem", "gen", "eps0", "eps", "seed", "trace"):
        val = getattr(args, key, None)
        if val is not None:
            mapping[key] = val
    overrides = dict(mapping.get("overrides") or {})
    for item in args.override or []:
        kv = parse_kv_spec(item)
        overrides.update(kv)
    mapping["overrides"] = overrides
    return RunConfig.from_mapping(args.command, mapping)


def _summary(tag, schedule_items, counter, **metrics) -> str:
    parts = [tag]
    parts.extend(f"{k}={v}" for k, v in schedule_items)
    parts.extend(f"{k}={v:.6e}" for k, v in metrics.items())
    parts.append(f"calls_f={counter.f} calls_g={counter.g} "
                 f"calls_hx={counter.hx} calls_hy={counter.hy}")
    return " ".join(parts)


def _cmd_solve_mm(args) -> int:
    cfg = _merge_config(args)
    problem = _load_problem(cfg, "mm")
    sol = exact_saddle(problem)
    gap_fn = mm_gap_oracle_hook(problem)
    ov = cfg.overrides
    res = solve_minimax(problem, np.zeros(problem.dim_x), np.zeros(problem.dim_y),
                        eps0=cfg.eps0, eps=cfg.eps,
                        lam=ov.get("lambda"), steps=ov.get("T"),
                        reference=sol, gap_fn=gap_fn)
    if cfg.trace:
        check_trace_invariants(res.trace)
        write_trace(cfg.trace, res.trace)
    print(_summary("solve-mm", sorted(res.schedule.items()), res.counter,
                   gap=res.trace[-1].gap, potential=res.trace[-1].potential))
    return 0


def _cmd_solve_fs(args) -> int:
    cfg = _merge_config(args)
    problem = _load_problem(cfg, "fs")
    sol = exact_min(problem)
    ov = cfg.overrides
    res = solve_finitesum(problem, np.zeros(problem.dim), eps0=cfg.eps0, eps=cfg.eps,
                          seed=cfg.seed, lam=ov.get("lambda"),
                          phase_len=ov.get("S"), phases=ov.get("T"), reference=sol)
    if cfg.trace:
        check_trace_invariants(res.trace)
        write_trace(cfg.trace, res.trace)
    sched = [("S", res.schedule.phase_len), ("T", res.schedule.phases),
             ("lambda", f"{res.schedule.lam:.6g}")]
    print(_summary("solve-fs", sched, res.counter,
                   suboptimality=res.trace[-1].gap, potential=res.trace[-1].potential))
    return 0


def _cmd_solve_mmfs(args) -> int:
    cfg = _merge_config(args)
    problem = _load_problem(cfg, "mmfs")
    sol = exact_saddle(problem)
    ov = cfg.overrides
    res = solve_mmfs(problem, np.zeros(problem.dim_x), np.zeros(problem.dim_y),
                     eps0=cfg.eps0, eps=cfg.eps, seed=cfg.seed,
                     gamma=ov.get("gamma"), lam=ov.get("lambda"),
                     phase_len=ov.get("S"), inner_phases=ov.get("N"),
                     outer_steps=ov.get("T"), reference=sol,
                     gap_fn=lambda x, y: mmfs_duality_gap(problem, x, y))
    if cfg.trace:
        check_trace_invariants(res.trace)
        write_trace(cfg.trace, res.trace)
    s = res.schedule
    sched = [("N", s.inner_phases), ("S", s.phase_len), ("T", s.outer_steps),
             ("gamma", f"{s.gamma:.6g}"), ("lambda", f"{s.lam:.6g}")]
    print(_summary("solve-mmfs", sched, res.counter,
                   gap=res.trace[-1].gap, potential=res.trace[-1].potential))
    return 0


def _cmd_reduce_fs(args) -> int:
    cfg = _merge_config(args)
    if cfg.gen is None or not cfg.gen.startswith("aggfs"):
        raise ConfigError("reduce-fs wants --gen aggfs:... (aggregate-only instance)")
    _, summands, mu = build_problem_from_gen(cfg.gen)
    target = FiniteSumProblem(summands, 1e-12)
    sol = exact_min(target)
    x0 = np.zeros(summands[0].dim)
    lbar = float(np.mean([s.smoothness for s in summands]))
    v0 = bregman_euclidean(x0, sol.x)
    steps = int(cfg.overrides.get("T") or
                max(1, math.ceil(math.log2(max(2.0 * lbar * v0 / cfg.eps, 2.0)))))
    sub = fs_subsolver(seed=cfg.seed)
    x, iters = redx_convex(summands, mu, x0, steps, sub)
    subopt = target.objective(x) - target.objective(sol.x)
    print(f"reduce-fs K={steps} mu={mu:.6g} suboptimality={subopt:.6e} "
          f"V={bregman_euclidean(x, sol.x):.6e}")
    return 0


def _cmd_reduce_mmfs(args) -> int:
    cfg = _merge_config(args)
    if cfg.gen is None or not cfg.gen.startswith("aggmm"):
        raise ConfigError("reduce-mmfs wants --gen aggmm:... (aggregate-only instance)")
    _, fs, gs, hs, mu_x, mu_y = build_problem_from_gen(cfg.gen)
    target = MinimaxFiniteSumProblem(fs, gs, hs, 1e-12, 1e-12)
    sol = exact_saddle(target)
    x0 = np.zeros(fs[0].dim)
    y0 = np.zeros(gs[0].dim)
    v0 = mu_x * bregman_euclidean(x0, sol.x) + mu_y * bregman_euclidean(y0, sol.y)
    steps = int(cfg.overrides.get("T") or
                max(1, math.ceil(math.log2(max(100.0 * v0 / cfg.eps, 2.0)))))
    sub = mmfs_subsolver(seed=cfg.seed)
    (x, y), iters = redx_minimax(fs, gs, hs, mu_x, mu_y, (x0, y0), steps, sub)
    gap = mmfs_duality_gap(target, x, y)
    print(f"reduce-mmfs K={steps} mu_x={mu_x:.6g} mu_y={mu_y:.6g} gap={gap:.6e}")
    return 0


def _cmd_verify(args) -> int:
    names = SUITE_NAMES if args.suite in (None, "all") else (args.suite,)
    reports = (run_all(args.seeds) if args.suite in (None, "all")
               else [run_suite(args.suite, args.seeds)])
    for r in reports:
        print(r.line())
    failed = [r.name for r in reports if not r.passed]
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print(f"all {len(list(names))} suites passed")
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def _calls_to_target(trace, target: float) -> int | None:
    for rec in trace:
        if not math.isnan(rec.gap) and rec.gap <= target:
            return rec.calls_f + rec.calls_g + rec.calls_hx + rec.calls_hy
    return None


def bench_mm_condition(grid, seeds: int, eps: float = 1e-8):
    """Median oracle calls for the minimax solver across condition numbers."""
    rows = []
    for cond in grid:
        per_seed = []
        kappa = None
        for seed in range(seeds):
            prob = gen_quadratic_minimax(2, 2, cond_x=float(cond), cond_y=float(cond),
                                         lam_targets=(0.0, 0.0, 0.0), seed=seed,
                                         lin_scale=0.3)
            kappa = prob.kappa()
            sol = exact_saddle(prob)
            gap_fn = mm_gap_oracle_hook(prob)
            res = solve_minimax(prob, np.zeros(2), np.zeros(2), eps0=1.0, eps=eps,
                                reference=sol, gap_fn=gap_fn, target_gap=eps)
            calls = _calls_to_target(res.trace, eps)
            per_seed.append(calls if calls is not None else res.counter.total)
        rows.append({"family": "mm-condition", "param": float(cond),
                     "kappa": kappa, "kappa_alt": kappa,
                     "median_calls": statistics.median(per_seed),
                     "target": eps, "seeds": seeds})
    return rows


def bench_fs_nonuniform(grid, seeds: int, eps: float = 1e-6, beta: float = 2.0,
                        lbar: float = 10.0):
    """Median calls for the finite-sum solver on the L_i = lbar * i^beta family.

    kappa is the sharp predictor n + sum_i sqrt(L_i)/sqrt(n mu); kappa_alt the
    uniform-sampling predictor n + sqrt(sum_i L_i / mu).
    """
    rows = []
    for n in grid:
        n = int(n)
        per_seed = []
        kappa = kappa_alt = None
        for seed in range(seeds):
            prob = gen_quadratic_finitesum(n, 4, beta=beta, lbar=lbar, mu=1.0,
                                           seed=seed, lin_scale=0.5)
            ls = prob.smoothness_list
            kappa = prob.kappa()
            kappa_alt = n + math.sqrt(float(ls.sum()) / prob.mu)
            sol = exact_min(prob)
            x0 = np.zeros(prob.dim)
            eps0 = max(prob.objective(x0) - prob.objective(sol.x), eps)
            res = solve_finitesum(prob, x0, eps0=eps0, eps=eps, seed=seed,
                                  reference=sol)
            calls = _calls_to_target(res.trace, eps)
            per_seed.append(calls if calls is not None else res.counter.total)
        rows.append({"family": "fs-nonuniform", "param": n,
                     "kappa": kappa, "kappa_alt": kappa_alt,
                     "median_calls": statistics.median(per_seed),
                     "target": eps, "seeds": seeds})
    return rows


BENCH_FAMILIES = {"mm-condition": bench_mm_condition,
                  "fs-nonuniform": bench_fs_nonuniform}

BENCH_COLUMNS = ("family", "param", "kappa", "kappa_alt", "median_calls",
                 "target", "seeds")


def bench_rows_to_csv(rows) -> str:
    lines = [",".join(BENCH_COLUMNS)]
    for row in rows:
        lines.append(",".join(repr(row[c]) if isinstance(row[c], float) else str(row[c])
                              for c in BENCH_COLUMNS))
    return "\n".join(lines) + "\n"


def parse_grid_spec(spec: str | None) -> list:
    """``key=v1,v2,...`` -> [v1, v2, ...]; empty/missing spec -> empty grid."""
    if not spec or "=" not in spec:
        return []
    _, _, values = spec.partition("=")
    from .config import parse_scalar
    return [parse_scalar(v) for v in values.split(",") if v.strip()]


def _cmd_bench(args) -> int:
    if args.family not in BENCH_FAMILIES:
        raise UnknownFamilyError(
            f"unknown family {args.family!r}; known: {', '.join(BENCH_FAMILIES)}")
    grid = parse_grid_spec(args.grid)
    rows = BENCH_FAMILIES[args.family](grid, max(1, args.seeds))
    csv_text = bench_rows_to_csv(rows)
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(csv_text)
    sys.stdout.write(csv_text)
    return 0


def _cmd_gen(args) -> int:
    if not args.gen:
        raise ConfigError("gen requires --gen SPEC")
    if not args.problem:
        raise ConfigError("gen requires --problem OUT.qmm (destination path)")
    built = build_problem_from_gen(args.gen)
    if isinstance(built, tuple):
        raise ConfigError("aggregate-only instances are not qmm-serializable")
    write_qmm(args.problem, built)
    print(f"wrote {args.problem}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _add_run_flags(sp) -> None:
    sp.add_argument("config", nargs="?", default=None,
                    help="optional flat key-value config file")
    sp.add_argument("--problem", help="qmm problem file")
    sp.add_argument("--gen", help="generator spec kind:key=val,...")
    sp.add_argument("--eps", type=float, help="target accuracy")
    sp.add_argument("--eps0", type=float, help="initial gap bound")
    sp.add_argument("--seed", type=int, help="run seed")
    sp.add_argument("--trace", help="trace CSV output path")
    sp.add_argument("--override", action="append",
                    help="schedule override key=val (repeatable; lambda,S,T,N,gamma)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mirrorprox",
                                 description="primal-dual extragradient solvers")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn in (("solve-mm", _cmd_solve_mm), ("solve-fs", _cmd_solve_fs),
                     ("solve-mmfs", _cmd_solve_mmfs), ("reduce-fs", _cmd_reduce_fs),
                     ("reduce-mmfs", _cmd_reduce_mmfs)):
        sp = sub.add_parser(name)
        _add_run_flags(sp)
        sp.set_defaults(fn=fn)
    sp = sub.add_parser("verify")
    sp.add_argument("--suite", default="all")
    sp.add_argument("--seeds", type=int, default=100)
    sp.set_defaults(fn=_cmd_verify)
    sp = sub.add_parser("bench")
    sp.add_argument("--family", required=True)
    sp.add_argument("--grid", help="grid spec, e.g. cond=1e2,1e4,1e6")
    sp.add_argument("--seeds", type=int, default=3)
    sp.add_argument("--trace", help="CSV output path")
    sp.set_defaults(fn=_cmd_bench)
    sp = sub.add_parser("gen")
    sp.add_argument("--gen", help="generator spec")
    sp.add_argument("--problem", help="destination qmm path")
    sp.set_defaults(fn=_cmd_gen)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigError, InvalidSpecError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except MirrorProxError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
