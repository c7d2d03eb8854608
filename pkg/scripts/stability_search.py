"""Empirical search for the smallest perturbation order preserving the
Hilbert function and the Betti numbers, compared against the proven bounds."""

import argparse
import sys
from dataclasses import dataclass

from localring import perturb as pb
from localring.ideal_io import load_ideal


@dataclass
class SearchConfig:
    file: str
    p: int = 2
    max_n: int = 8
    trials: int = 5
    seed: int = 0


def parse_args(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("file", help="ideal file (field/vars/gen lines)")
    parser.add_argument("--p", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    return SearchConfig(args.file, args.p, args.max_n, args.trials, args.seed)


def run(config):
    ideal = load_ideal(config.file)
    result = pb.search_min_N(
        ideal.generators, p=config.p, max_N=config.max_n,
        trials=config.trials, seed=config.seed,
    )
    print("proven bound (Betti stability): N >= {}".format(result["thm_bound"]))
    print("proven bound (CM Hilbert stability): N >= {}".format(result["remark_bound"]))
    for row in result["table"]:
        bar = "#" * row["preserved"] + "." * (row["trials"] - row["preserved"])
        print("N = {:2d}  preserved {:>5}  {}".format(row["N"], row["fraction"], bar))
    return 0


if __name__ == "__main__":
    sys.exit(run(parse_args()))
