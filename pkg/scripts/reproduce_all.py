"""Run every golden-data reproduction and report pass/fail."""

import sys

from localring.cli import main


def run():
    worst = 0
    for case in ("ncm", "betti-jump", "height-drop"):
        print("== reproduce {} ==".format(case))
        worst = max(worst, main(["reproduce", case]))
    return worst


if __name__ == "__main__":
    sys.exit(run())
