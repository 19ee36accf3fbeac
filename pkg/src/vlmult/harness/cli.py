"""Command line entry point: ``vlmult <e1..e9|all> --out report.csv``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import EXPERIMENTS, ConfigError, load_configs
from .experiments import run
from .report import write_reports

log = logging.getLogger("vlmult")

EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vlmult", description="Run multiplier experiments and write CSV/JSON reports.")
    ap.add_argument("experiment", choices=[*EXPERIMENTS, "all"])
    ap.add_argument("--config", type=Path, default=None, help="YAML config file")
    ap.add_argument("--out", type=Path, default=Path("report.csv"), help="CSV path; the JSON sidecar sits next to it")
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--grid-n", type=int, default=None, help="nodes per axis")
    ap.add_argument("--grid-l", type=float, default=None, help="half-width of the spatial box")
    ap.add_argument("--reproducible", action="store_true", help="omit the timestamp line")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    names = EXPERIMENTS if args.experiment == "all" else (args.experiment,)
    if args.seed is not None and args.seed < 0:
        print("error: --seed must be non-negative", file=sys.stderr)
        return EXIT_CONFIG
    try:
        configs = load_configs(args.config, names, args.seed, args.grid_n, args.grid_l)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    reports = []
    for cfg in configs:
        log.info("running %s", cfg.experiment)
        try:
            reports.append(run(cfg))
        except ValueError as exc:
            print(f"config error in {cfg.experiment}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
    csv_path, json_path = write_reports(reports, args.out, args.reproducible)
    failed = [r for rep in reports for r in rep.failures()]
    for r in failed:
        print(f"FAIL {r.experiment} {r.param_id} {r.quantity} value={r.value:.6g} tol={r.tolerance}", file=sys.stderr)
    log.info("wrote %s and %s", csv_path, json_path)
    return EXIT_FAIL if failed else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
