"""Seeded random formulas, one generator per fragment.

Used by the property tests, the acceptance suite and the experiment scripts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .formula import (
    BOT, TOP, And, Anon, Atom, Bot, Formula, GOr, Inc, Might, Neg, NonConst, Or, ROr,
    SNeg, Top, WNeg,
)
from .team import Team

FUZZ_FRAGMENTS = ("cpl", "vor", "inc", "inc0", "anon", "neq", "might", "union-closed", "full")


@dataclass
class FuzzConfig:
    variables: tuple[str, ...] = ("p", "q", "r")
    depth: int = 3
    max_width: int = 2
    leaf_bias: float = 0.3


def _terms(rng: random.Random, vars_: Sequence[str], k: int, consts: bool) -> tuple[str, ...]:
    pool = list(vars_) + ([TOP, BOT] if consts else [])
    return tuple(rng.choice(pool) for _ in range(k))


class FormulaGen:
    def __init__(self, fragment: str, config: FuzzConfig = FuzzConfig(), seed: int | None = 0):
        if fragment not in FUZZ_FRAGMENTS:
            raise ValueError(f"unknown fragment {fragment!r}")
        self.fragment = fragment
        self.cfg = config
        self.rng = random.Random(seed)

    # classical subformulas, used everywhere a negation appears
    def classical(self, depth: int) -> Formula:
        rng, vs = self.rng, self.cfg.variables
        if depth <= 0 or rng.random() < self.cfg.leaf_bias:
            roll = rng.random()
            if roll < 0.08:
                return Top()
            if roll < 0.16:
                return Bot()
            return Atom(rng.choice(vs))
        op = rng.choice(("and", "or", "neg"))
        if op == "neg":
            return Neg(self.classical(depth - 1))
        cls = And if op == "and" else Or
        return cls(self.classical(depth - 1), self.classical(depth - 1))

    def _atom(self) -> Formula | None:
        rng, vs, w = self.rng, self.cfg.variables, self.cfg.max_width
        frag = self.fragment
        kinds = []
        if frag in ("inc", "union-closed", "full"):
            kinds.append("inc")
        if frag == "inc0":
            kinds.append("inc0")
        if frag in ("anon", "union-closed", "full"):
            kinds.append("anon")
        if frag in ("neq", "anon", "union-closed", "full"):
            kinds.append("ne")
        if not kinds:
            return None
        kind = rng.choice(kinds)
        k = rng.randint(1, w)
        if kind == "inc":
            return Inc(_terms(rng, vs, k, True), _terms(rng, vs, k, True))
        if kind == "inc0":
            return Inc(tuple(rng.choice((TOP, BOT)) for _ in range(k)), _terms(rng, vs, k, rng.random() < 0.2))
        if kind == "anon":
            lhs = tuple(rng.sample(vs, rng.randint(0, min(w, len(vs)))))
            rhs = tuple(rng.sample(vs, rng.randint(1, min(w, len(vs)))))
            return Anon(lhs, rhs)
        return NonConst(rng.choice(vs))

    def formula(self, depth: int | None = None) -> Formula:
        depth = self.cfg.depth if depth is None else depth
        rng, frag = self.rng, self.fragment
        if frag == "cpl":
            return self.classical(depth)
        if depth <= 0 or rng.random() < self.cfg.leaf_bias:
            atom = self._atom() if rng.random() < 0.5 else None
            return atom if atom is not None else self.classical(0)
        ops = ["and", "or", "neg"]
        if frag in ("vor", "union-closed", "full"):
            ops += ["ror", "ror"]
        if frag in ("might", "union-closed", "full"):
            ops += ["might"]
        if frag == "full":
            ops += ["gor", "wneg", "sneg"]
        op = rng.choice(ops)
        if op == "neg":
            return Neg(self.classical(depth - 1))
        if op in ("might", "wneg", "sneg"):
            return {"might": Might, "wneg": WNeg, "sneg": SNeg}[op](self.formula(depth - 1))
        cls = {"and": And, "or": Or, "ror": ROr, "gor": GOr}[op]
        return cls(self.formula(depth - 1), self.formula(depth - 1))

    def __iter__(self):
        while True:
            yield self.formula()

    def take(self, n: int) -> list[Formula]:
        return [self.formula() for _ in range(n)]


def random_formulas(fragment: str, n: int, seed: int = 0, **config) -> list[Formula]:
    return FormulaGen(fragment, FuzzConfig(**config), seed).take(n)


def random_team(rng: random.Random, domain: Sequence[str], max_size: int | None = None) -> Team:
    m = 1 << len(domain)
    size = rng.randint(0, m if max_size is None else min(m, max_size))
    return Team.from_codes(domain, rng.sample(range(m), size))
