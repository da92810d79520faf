"""Command-line entry points: simulate, calibrate, compare, report.

All outputs are deterministic functions of (configuration, seed): floats are
written at full precision, JSON keys are sorted, and CSV rows follow fixed
orders, so identical runs produce byte-identical files regardless of the
worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

from .aggregate import analytic_reserve_moments, triangle_occurrence, triangle_reporting
from .calibrate import calibrated_params
from .chainladder import compare_2d_3d
from .config import config_from_params, parse_config, write_config
from .engine import build_risk_report, run_monte_carlo
from .errors import EstimationError, ParameterError
from .model import simulate_path
from .presets import default_config
from .streams import RandomStream

__all__ = ["main"]


def _load(args) -> tuple:
    """Resolve the configuration with CLI overrides applied before validation."""
    if args.config == "default":
        mapping = default_config()
    else:
        path = Path(args.config)
        try:
            mapping = json.loads(path.read_text())
        except FileNotFoundError:
            raise ParameterError(f"configuration file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: not valid JSON ({exc})") from None
        if not isinstance(mapping, dict):
            raise ParameterError(f"{path}: top level must be a mapping")
    run = mapping.setdefault("run", {})
    if getattr(args, "seed", None) is not None:
        run["master_seed"] = args.seed
    if getattr(args, "replicates", None) is not None:
        run["replicates"] = args.replicates
    if getattr(args, "out", None) is not None:
        run["output_dir"] = args.out
    return parse_config(mapping), mapping


def _fmt(value: float) -> str:
    return repr(float(value))


def _write_distribution_csv(dist, path: Path) -> None:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rank", "value"])
        for rank, value in enumerate(dist.samples, start=1):
            writer.writerow([rank, _fmt(value)])


def _write_triangle_csv(tri, path: Path) -> None:
    n_rows, n_cols = tri.values.shape
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["row"] + [f"dev{n}" for n in range(n_cols)])
        for r in range(n_rows):
            cells = [
                "" if math.isnan(tri.values[r, n]) else _fmt(tri.values[r, n])
                for n in range(n_cols)
            ]
            writer.writerow([r + 1] + cells)


def _report_payload(report) -> dict:
    return {
        "replicates": report.replicate_count,
        "mean": report.mean,
        "std_dev": report.std_dev,
        "min": None,
        "max": None,
        "value_at_risk": {repr(level): value for level, value in report.value_at_risk.items()},
        "expected_shortfall": {
            repr(level): value for level, value in report.expected_shortfall.items()
        },
        "analytic_mean": report.analytic_mean,
        "analytic_std": report.analytic_std,
    }


def _cmd_simulate(args) -> int:
    cfg, _ = _load(args)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    distributions = run_monte_carlo(
        cfg.params, cfg.replicates, cfg.master_seed, cfg.statistics, workers=args.workers
    )
    moments = analytic_reserve_moments(cfg.params)

    summary = {
        "master_seed": cfg.master_seed,
        "replicates": cfg.replicates,
        "statistics": {},
    }
    for name in cfg.statistics:
        dist = distributions[name]
        report = build_risk_report(dist, cfg.quantile_levels, moments.get(name))
        payload = _report_payload(report)
        payload["min"] = float(dist.samples[0])
        payload["max"] = float(dist.samples[-1])
        summary["statistics"][name] = payload
        _write_distribution_csv(dist, out / f"{name}_distribution.csv")

    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")

    first_path = simulate_path(RandomStream(cfg.master_seed, 0), cfg.params)
    _write_triangle_csv(triangle_occurrence(first_path), out / "triangle_occurrence.csv")
    _write_triangle_csv(triangle_reporting(first_path), out / "triangle_reporting.csv")

    print(f"wrote {len(cfg.statistics)} distributions, summary.json and triangles to {out}")
    return 0


def _cmd_calibrate(args) -> int:
    cfg, mapping = _load(args)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    world = simulate_path(RandomStream(cfg.master_seed, 0), cfg.params, retain_severities=True)
    estimated = calibrated_params(world, fallback=cfg.params)
    exported = config_from_params(
        estimated,
        replicates=cfg.replicates,
        master_seed=cfg.master_seed,
        statistics=cfg.statistics,
        quantile_levels=cfg.quantile_levels,
        output_dir=cfg.output_dir,
    )
    target = out / "estimated_config.json"
    write_config(exported, target)
    print(f"wrote estimated parameter configuration to {target}")
    return 0


def _cmd_compare(args) -> int:
    cfg, _ = _load(args)
    out = Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)

    comparison = compare_2d_3d(cfg.params, cfg.replicates, cfg.master_seed)
    with (out / "comparison.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["replicate", "estimator", "target", "estimate", "truth", "error", "note"])
        for rec in comparison.records:
            failed = math.isnan(rec.estimate)
            writer.writerow(
                [
                    rec.replicate,
                    rec.estimator,
                    rec.target,
                    "" if failed else _fmt(rec.estimate),
                    _fmt(rec.truth),
                    "" if failed else _fmt(rec.error),
                    rec.note,
                ]
            )
    with (out / "comparison_summary.csv").open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["estimator", "target", "replicates_ok", "replicates_failed", "bias", "rmse"])
        for name in sorted(comparison.summary):
            s = comparison.summary[name]
            writer.writerow(
                [s.estimator, s.target, s.replicates_ok, s.replicates_failed, _fmt(s.bias), _fmt(s.rmse)]
            )
    print(f"wrote comparison.csv and comparison_summary.csv to {out}")
    return 0


def _cmd_report(args) -> int:
    out = Path(args.out)
    summary_path = out / "summary.json"
    if not summary_path.exists():
        raise ParameterError(f"no summary.json in {out}; run `claimcube simulate` first")
    summary = json.loads(summary_path.read_text())

    print(f"run: seed={summary['master_seed']} replicates={summary['replicates']}")
    for name, stats in summary["statistics"].items():
        print(f"\n{name}")
        print(f"  mean      {stats['mean']:,.2f}")
        print(f"  std dev   {stats['std_dev']:,.2f}")
        print(f"  range     [{stats['min']:,.2f}, {stats['max']:,.2f}]")
        if stats.get("analytic_mean") is not None:
            print(f"  analytic  mean {stats['analytic_mean']:,.2f}  std {stats['analytic_std']:,.2f}")
        for level in sorted(stats["value_at_risk"], key=float):
            var = stats["value_at_risk"][level]
            es = stats["expected_shortfall"][level]
            print(f"  level {float(level):.2f}  VaR {var:,.2f}  ES {es:,.2f}")

    comparison_path = out / "comparison_summary.csv"
    if comparison_path.exists():
        print("\n2D vs 3D comparison")
        with comparison_path.open() as fh:
            for row in csv.DictReader(fh):
                print(
                    f"  {row['estimator']} (target {row['target']}): "
                    f"bias {float(row['bias']):,.2f}  rmse {float(row['rmse']):,.2f}  "
                    f"ok {row['replicates_ok']}  failed {row['replicates_failed']}"
                )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="claimcube",
        description="Monte Carlo claim reserving on a 3-axis claim model",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, replicates=True):
        p.add_argument("--config", required=True, help="configuration file, or 'default'")
        p.add_argument("--seed", type=int, default=None, help="override run.master_seed")
        p.add_argument("--out", default=None, help="override run.output_dir")
        if replicates:
            p.add_argument("--replicates", type=int, default=None, help="override run.replicates")

    p_sim = sub.add_parser("simulate", help="run the MC engine; write distributions and risk report")
    add_common(p_sim)
    p_sim.add_argument("--workers", type=int, default=1, help="worker threads (results identical)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_cal = sub.add_parser("calibrate", help="re-simulate one world and export estimated parameters")
    add_common(p_cal, replicates=False)
    p_cal.set_defaults(func=_cmd_calibrate)

    p_cmp = sub.add_parser("compare", help="score 2D Chain-Ladder estimators against simulated truth")
    add_common(p_cmp)
    p_cmp.set_defaults(func=_cmd_compare)

    p_rep = sub.add_parser("report", help="print a human-readable summary of prior outputs")
    p_rep.add_argument("--out", required=True, help="output directory of a previous run")
    p_rep.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, EstimationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
