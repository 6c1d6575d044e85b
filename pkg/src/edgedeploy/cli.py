"""Command-line front end: ``edgedeploy {analyze,optimize,adjust,simulate,plot}``.

Exit codes: 0 success, 1 invalid config or input, 2 infeasible adjustment,
3 ``--check`` failure, 4 I/O error.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import logging
import sys
from pathlib import Path

from .errors import EdgeDeployError
from .model import aundt, aundt_lower_bound, user_ndt
from .optimizer import optimal_density, plan_adjustment
from .plotting import plot_csv
from .scenario import ConfigError, ScenarioConfig
from .simulator import CacheModel, run_trials

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_INFEASIBLE = 2
EXIT_CHECK = 3
EXIT_IO = 4

FRACTIONAL_TOLERANCE = 1e-9
SIGMA_BUDGET = 4.0

ANALYZE_COLUMNS = [
    "mu", "gamma", "lambda", "beta", "coop_reach", "M",
    "aundt", "aundt_lower_bound", "ndt_min", "ndt_max",
]
SIMULATE_COLUMNS = [
    "mu", "gamma", "lambda", "beta", "coop_reach", "cache_model", "M", "trials", "seed",
    "empirical_aundt", "std_error", "analytic_aundt", "abs_gap", "std_error_defined",
]

log = logging.getLogger("edgedeploy")


def fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _param_cells(params):
    return {
        "mu": params.mu, "gamma": params.gamma, "lambda": params.lam,
        "beta": params.beta, "coop_reach": params.coop_reach,
    }


def analyze_rows(config: ScenarioConfig) -> list[dict]:
    rows = []
    for params in config.param_sets():
        for m in config.densities():
            per_user = [user_ndt(params, m, j).total for j in range(1, m + 1)]
            rows.append({
                **_param_cells(params),
                "M": m,
                "aundt": aundt(params, m),
                "aundt_lower_bound": aundt_lower_bound(params, m),
                "ndt_min": min(per_user),
                "ndt_max": max(per_user),
            })
    return rows


def simulate_rows(config: ScenarioConfig, threads=None) -> list[dict]:
    rows = []
    for params in config.param_sets():
        for m in config.densities():
            result = run_trials(config.sim_config(params, m), threads=threads)
            rows.append({
                **_param_cells(params),
                "cache_model": config.cache_model.value,
                "M": m,
                "trials": config.trials,
                "seed": config.seed,
                "empirical_aundt": result.empirical_aundt,
                "std_error": result.std_error,
                "analytic_aundt": result.analytic_aundt,
                "abs_gap": result.abs_gap,
                "std_error_defined": result.std_error_defined,
            })
    return rows


def check_rows(rows: list[dict]) -> list[dict]:
    """Rows whose simulated AUNDT strays from the closed form."""
    failures = []
    for row in rows:
        if row["cache_model"] == CacheModel.FRACTIONAL.value:
            bad = row["abs_gap"] > FRACTIONAL_TOLERANCE
        else:
            bad = row["abs_gap"] > SIGMA_BUDGET * row["std_error"]
        if bad:
            failures.append(row)
    return failures


@contextlib.contextmanager
def _open_output(path):
    if path is None:
        yield sys.stdout
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        yield fh


def write_csv(rows, columns, path=None):
    with _open_output(path) as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([fmt(row[c]) for c in columns])


def cmd_analyze(args, config: ScenarioConfig) -> int:
    out = args.out or config.output_path
    write_csv(analyze_rows(config), ANALYZE_COLUMNS, out)
    if out and config.plot_path:
        plot_csv(out, config.plot_path)
    return EXIT_OK


def cmd_optimize(args, config: ScenarioConfig) -> int:
    for params in config.param_sets():
        sol = optimal_density(params)
        print(f"mu={fmt(params.mu)} gamma={fmt(params.gamma)} lambda={fmt(params.lam)} "
              f"beta={fmt(params.beta)} L={params.coop_reach}")
        print(f"  relaxed    {sol.relaxed:.6f}")
        print(f"  rounded    {sol.rounded}")
        print(f"  exact      {sol.exact}")
        print(f"  degenerate {fmt(sol.degenerate)}")
        if sol.degenerate:
            print("  (mu = 0: every M >= L gives the same AUNDT)")
        else:
            print(f"  aundt      {aundt(params, sol.exact):.9f}")
    return EXIT_OK


def cmd_adjust(args, config: ScenarioConfig) -> int:
    status = EXIT_OK
    for params in config.param_sets():
        sol = plan_adjustment(params, args.m_prime, m_star=args.m_star)
        print(f"mu={fmt(params.mu)} gamma={fmt(params.gamma)} lambda={fmt(params.lam)} "
              f"beta={fmt(params.beta)} L={params.coop_reach}")
        print(f"  M*         {sol.optimal_density}")
        print(f"  M'         {sol.target_density}")
        target = aundt(params, sol.optimal_density)
        print(f"  target     {target:.9f}")
        if sol.lambda_feasible:
            print(f"  lambda'    {sol.adjusted_lambda:.6f}  residual {sol.lambda_residual:.3e}")
        else:
            print(f"  lambda'    infeasible: {sol.lambda_reason}")
        if sol.mu_feasible:
            print(f"  mu'        {sol.adjusted_mu:.6f}  residual {sol.mu_residual:.3e}")
        else:
            print(f"  mu'        infeasible: {sol.mu_reason}")
        if not (sol.lambda_feasible and sol.mu_feasible):
            status = EXIT_INFEASIBLE
    if status == EXIT_INFEASIBLE:
        print("error: at least one adjustment is infeasible", file=sys.stderr)
    return status


def cmd_simulate(args, config: ScenarioConfig) -> int:
    rows = simulate_rows(config, threads=args.threads)
    out = args.out or config.output_path
    write_csv(rows, SIMULATE_COLUMNS, out)
    for row in rows:
        if not row["std_error_defined"]:
            log.warning("M=%s: one trial, std_error reported as 0", row["M"])
    if out and config.plot_path:
        plot_csv(out, config.plot_path)
    if args.check:
        failures = check_rows(rows)
        for row in failures:
            print(f"check failed: M={row['M']} gap={row['abs_gap']:.3e} "
                  f"std_error={row['std_error']:.3e}", file=sys.stderr)
        if failures:
            return EXIT_CHECK
    return EXIT_OK


def cmd_plot(args, config: ScenarioConfig | None) -> int:
    csv_path = args.csv or (config.output_path if config else None)
    out = args.out or (config.plot_path if config else None)
    if csv_path is None or out is None:
        raise ConfigError("plot needs --csv and --out (or output_path/plot_path in --config)")
    plot_csv(csv_path, out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edgedeploy", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help, config_required=True):
        p = sub.add_parser(name, help=help)
        p.add_argument("--config", required=config_required, help="scenario JSON file")
        return p

    p = add("analyze", "closed-form AUNDT over the M sweep, as CSV")
    p.add_argument("--out", help="CSV path (default: output_path or stdout)")
    p.set_defaults(func=cmd_analyze)

    p = add("optimize", "optimal cluster size")
    p.set_defaults(func=cmd_optimize)

    p = add("adjust", "compensating EH-BS rate or cache ratio for a smaller cluster")
    p.add_argument("--m-prime", type=int, required=True, help="deployable cluster size")
    p.add_argument("--m-star", type=int, help="reference optimum (default: exact optimum)")
    p.set_defaults(func=cmd_adjust)

    p = add("simulate", "Monte Carlo AUNDT over the M sweep, as CSV")
    p.add_argument("--out", help="CSV path (default: output_path or stdout)")
    p.add_argument("--check", action="store_true",
                   help="exit 3 if any row strays from the closed form")
    p.add_argument("--threads", type=int, help="worker threads (default: $EDGEDEPLOY_THREADS or all cores)")
    p.set_defaults(func=cmd_simulate)

    p = add("plot", "render an analyze/simulate CSV as SVG", config_required=False)
    p.add_argument("--csv", help="input CSV (default: output_path)")
    p.add_argument("--out", help="SVG path (default: plot_path)")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        config = ScenarioConfig.load(args.config) if args.config else None
        return args.func(args, config)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except EdgeDeployError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
