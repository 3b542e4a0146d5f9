"""Fuzz the decision procedures against each other and report agreement rates."""

import argparse
import time
from dataclasses import dataclass

from teamlogic.decide import EntailmentQuery, entails_bruteforce, entails_nf
from teamlogic.fuzz import FuzzConfig, FormulaGen
from teamlogic.normalform import NotInFragment, dnf
from teamlogic.semantics import full_evaluator


@dataclass
class Config:
    n: int = 500
    seed: int = 0
    depth: int = 3
    variables: tuple = ("p", "q", "r")


def run(cfg: Config) -> dict:
    gen = FormulaGen("union-closed", FuzzConfig(variables=cfg.variables, depth=cfg.depth), cfg.seed)
    ev = full_evaluator(cfg.variables)
    stats = dict(pairs=0, valid=0, nf_disagree=0, routes=0, route_disagree=0, dnf_wrong=0)
    t = time.perf_counter()
    for _ in range(cfg.n):
        a, b = gen.formula(), gen.formula()
        bf = entails_bruteforce(EntailmentQuery((a,), b)).holds
        stats["pairs"] += 1
        stats["valid"] += bf
        stats["nf_disagree"] += bool(entails_nf(a, b)) != bf
        sem = dnf(a, domain=cfg.variables)
        stats["dnf_wrong"] += not (ev.table(sem.formula()) == ev.table(a)).all()
        try:
            syn = dnf(a, method="syntactic", domain=cfg.variables)
        except NotInFragment:
            continue
        stats["routes"] += 1
        stats["route_disagree"] += syn.teams != sem.teams
    stats["seconds"] = round(time.perf_counter() - t, 2)
    return stats


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("-n", type=int, default=Config.n)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--depth", type=int, default=Config.depth)
    a = ap.parse_args()
    for k, v in run(Config(a.n, a.seed, a.depth)).items():
        print(f"{k:>15}: {v}")
