"""Run the experiment suite and write reports under results/.

    python scripts/run_experiments.py [e1 ... e9] [--config configs/default.yaml]
"""

import argparse
import sys
from pathlib import Path

from vlmult.harness.cli import main

ROOT = Path(__file__).resolve().parents[1]

if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("experiments", nargs="*", default=["all"])
    ap.add_argument("--config", default=str(ROOT / "configs" / "default.yaml"))
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    status = 0
    for name in args.experiments:
        out = ROOT / "results" / f"{name}.csv"
        code = main([name, "--config", args.config, "--out", str(out), "--seed", str(args.seed), "--reproducible"])
        print(f"{name}: exit {code} -> {out}")
        status = max(status, code)
    sys.exit(status)
