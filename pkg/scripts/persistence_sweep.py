"""Evolved superoscillations against the evolved plane wave, for every sweep config.

Runs the ``sweep`` subcommand on configs/sweep_*.json and configs/power_p2.json
and writes CSV plus SVG next to each other in the output directory.
"""
import argparse
import sys
from pathlib import Path

from quadprop.cli import run_command

ROOT = Path(__file__).resolve().parent.parent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--output-dir", default="out")
    args = ap.parse_args()
    configs = sorted((ROOT / "configs").glob("sweep_*.json")) + [ROOT / "configs" / "power_p2.json"]
    status = 0
    for cfg in configs:
        print(f"== {cfg.name}")
        status |= run_command(["sweep", "--config", str(cfg), "--output-dir", args.output_dir])
    sys.exit(status)


if __name__ == "__main__":
    main()
