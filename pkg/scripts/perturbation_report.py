"""Full perturbation report for an ideal file: all checks, JSON output."""

import argparse
import sys
from dataclasses import dataclass

from localring.cli import main


@dataclass
class ReportConfig:
    file: str
    N: int
    trials: int = 3
    seed: int = 0
    json: str = None


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("file")
    parser.add_argument("--N", type=int, required=True)
    parser.add_argument("--trials", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", default=None)
    args = parser.parse_args(argv)
    return ReportConfig(args.file, args.N, args.trials, args.seed, args.json)


def run(config):
    argv = [
        "perturb", config.file, "--N", str(config.N),
        "--trials", str(config.trials), "--seed", str(config.seed),
        "--check", "star,hf,mu,betti,elias,minmult",
    ]
    if config.json:
        argv += ["--json", config.json]
    return main(argv)


if __name__ == "__main__":
    sys.exit(run(parse_args()))
