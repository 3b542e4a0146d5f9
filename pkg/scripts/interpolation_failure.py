"""Strict interpolation failure: exhaust small candidates at increasing depth."""

import argparse
import time
from dataclasses import dataclass

from teamlogic.formula import And, parse
from teamlogic.interpolate import search_interpolant_space
from teamlogic.normalform import build_psi
from teamlogic.team import Team, restrict


@dataclass
class Config:
    max_depth: int = 4
    vocab: tuple = ()


def main(cfg: Config) -> None:
    domain = ("p", "q", "r", "s")
    X = Team.from_rows(domain, ["1000", "0100", "0101", "0010"])
    premise = And(build_psi(restrict(X, ("p", "q", "r"))), parse("(p vor q) | (q vor r)"))
    goal = parse("s vor !s")
    for depth in range(cfg.max_depth + 1):
        t = time.perf_counter()
        res = search_interpolant_space(premise, goal, cfg.vocab, depth, "strict", domain)
        print(f"depth {depth}: {res.describe()} [{time.perf_counter() - t:.2f}s]")
        if not res.exhausted:
            break
    print("maximal relevant teams:", ", ".join(str(g) for g in res.ground_teams))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-depth", type=int, default=Config.max_depth)
    ap.add_argument("--vocab", default="", help="comma separated variables")
    a = ap.parse_args()
    main(Config(a.max_depth, tuple(v for v in a.vocab.split(",") if v)))
