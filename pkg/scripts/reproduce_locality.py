"""Replay the strict locality counterexample and print the satisfaction matrix.

Also scans fuzzed formulas for strict downward-locality failures to show how
common they are.
"""

import argparse
from dataclasses import dataclass

from teamlogic.cli import main as cli_main
from teamlogic.fuzz import random_formulas
from teamlogic.semantics import check_locality


@dataclass
class Config:
    formulas: int = 200
    seed: int = 0
    variables: tuple = ("p", "q", "r")
    pad: tuple = ("s",)


def scan(cfg: Config) -> None:
    down = 0
    for phi in random_formulas("union-closed", cfg.formulas, seed=cfg.seed, variables=cfg.variables):
        rep = check_locality(phi, cfg.variables, cfg.pad, "strict", "down")
        if not rep.holds:
            down += 1
            if down <= 3:
                big, small = rep.counterexample
                print(f"  {phi}: holds on {big}, fails on {small}")
    print(f"strict downward-locality failures: {down}/{cfg.formulas}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--formulas", type=int, default=Config.formulas)
    ap.add_argument("--seed", type=int, default=Config.seed)
    args = ap.parse_args()
    code = cli_main(["demo", "locality-strict"])
    print()
    scan(Config(formulas=args.formulas, seed=args.seed))
    raise SystemExit(code)
