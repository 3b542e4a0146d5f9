"""Lax and strict team semantics, closure checks and locality checks.

Evaluation works on a *ground set* of valuations: the satisfaction table of
a formula is a boolean array over every subteam of the ground set, computed
bottom-up. Splitting disjunctions become products over the subset lattice
(union product for lax, subset convolution for strict), so evaluating on a
single team and enumerating every team over a domain share one code path.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lattice
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .formula import (
    BOT, TOP, And, Anon, Atom, Bot, Const, Formula, GOr, Inc, Might, Neg,
    NonConst, Or, ROr, SNeg, Top, WNeg, as_formula, free_vars,
)
from .team import Team, TeamProperty, check_domain, projection_map, restrict


class EvalMode(str, enum.Enum):
    LAX = "lax"
    STRICT = "strict"


def as_mode(mode) -> EvalMode:
    return mode if isinstance(mode, EvalMode) else EvalMode(str(mode).lower())


class UnboundVariable(ValueError):
    pass


def _term_value(term: str, code: int, pos: dict[str, int]) -> int:
    if term == TOP:
        return 1
    if term == BOT:
        return 0
    return code >> pos[term] & 1


class GroundEvaluator:
    """Satisfaction tables of formulas over all subteams of ``ground``."""

    def __init__(self, domain: Sequence[str], ground: Sequence[int], mode=EvalMode.LAX,
                 caps: Caps = DEFAULT_CAPS):
        self.domain = tuple(domain)
        self.pos = {v: i for i, v in enumerate(self.domain)}
        self.ground = list(ground)
        self.m = len(self.ground)
        if self.m > min(caps.max_team_size, lattice.MAX_GROUND):
            raise CapExceeded(f"team of {self.m} valuations exceeds cap {caps.max_team_size}")
        self.mode = as_mode(mode)
        self.idx = lattice.indices(self.m)
        self.empty = self.idx == 0
        self._memo: dict[Formula, np.ndarray] = {}

    def _values(self, terms: Sequence[str]) -> list[tuple[int, ...]]:
        return [tuple(_term_value(t, c, self.pos) for t in terms) for c in self.ground]

    def _positions(self, pred) -> int:
        return sum(1 << j for j, c in enumerate(self.ground) if pred(c))

    def table(self, phi: Formula) -> np.ndarray:
        hit = self._memo.get(phi)
        if hit is None:
            hit = self._compute(phi)
            self._memo[phi] = hit
        return hit

    def _compute(self, phi: Formula) -> np.ndarray:
        idx, empty = self.idx, self.empty
        if isinstance(phi, Atom):
            if phi.name not in self.pos:
                raise UnboundVariable(phi.name)
            bad = self._positions(lambda c: not c >> self.pos[phi.name] & 1)
            return (idx & bad) == 0
        if isinstance(phi, Top):
            return np.ones(1 << self.m, dtype=bool)
        if isinstance(phi, Bot):
            return empty.copy()
        if isinstance(phi, Neg):
            sub = self.table(phi.sub)
            good = sum(1 << j for j in range(self.m) if sub[1 << j])
            return (idx & good) == 0
        if isinstance(phi, And):
            return self.table(phi.left) & self.table(phi.right)
        if isinstance(phi, GOr):
            return self.table(phi.left) | self.table(phi.right)
        if isinstance(phi, Or):
            return self._split(self.table(phi.left), self.table(phi.right))
        if isinstance(phi, ROr):
            a = self.table(phi.left) & ~empty
            b = self.table(phi.right) & ~empty
            return empty | self._split(a, b)
        if isinstance(phi, Might):
            return empty | lattice.subset_any(self.table(phi.sub) & ~empty)
        if isinstance(phi, WNeg):
            return empty | ~self.table(phi.sub)
        if isinstance(phi, SNeg):
            return ~self.table(phi.sub)
        if isinstance(phi, Inc):
            self._bind(phi)
            a = self._values(phi.lhs)
            b = self._values(phi.rhs)
            nbr = [sum(1 << k for k in range(self.m) if b[k] == a[j]) for j in range(self.m)]
            return lattice.every_point_has_neighbour(nbr, self.m)
        if isinstance(phi, (Anon, NonConst)):
            lhs, rhs = (phi.lhs, phi.rhs) if isinstance(phi, Anon) else ((), (phi.var,))
            self._bind(phi)
            a = self._values(lhs)
            b = self._values(rhs)
            nbr = [sum(1 << k for k in range(self.m) if a[k] == a[j] and b[k] != b[j])
                   for j in range(self.m)]
            return lattice.every_point_has_neighbour(nbr, self.m)
        if isinstance(phi, Const):
            self._bind(phi)
            ones = self._positions(lambda c: c >> self.pos[phi.var] & 1)
            return ((idx & ~ones) == 0) | ((idx & ones) == 0)
        raise TypeError(f"unknown formula node {phi!r}")

    def _bind(self, phi: Formula) -> None:
        missing = free_vars(phi) - set(self.pos)
        if missing:
            raise UnboundVariable(", ".join(sorted(missing)))

    def _split(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.mode is EvalMode.STRICT:
            return lattice.disjoint_product(a, b)
        return lattice.union_product(a, b)


def eval(phi, X: Team, mode=EvalMode.LAX, caps: Caps = DEFAULT_CAPS) -> bool:  # noqa: A001
    """Does the team ``X`` satisfy ``phi``?"""
    phi = as_formula(phi)
    missing = free_vars(phi) - set(X.domain)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    ev = GroundEvaluator(X.domain, X.codes, mode, caps)
    return bool(ev.table(phi)[-1])


def full_evaluator(domain: Sequence[str], mode=EvalMode.LAX, caps: Caps = DEFAULT_CAPS) -> GroundEvaluator:
    domain = check_domain(domain)
    if len(domain) > caps.eval_vars:
        raise CapExceeded(f"|N| = {len(domain)} exceeds the enumeration cap {caps.eval_vars}")
    return GroundEvaluator(domain, range(1 << len(domain)), mode, caps)


def models(phi, domain: Sequence[str], mode=EvalMode.LAX, caps: Caps = DEFAULT_CAPS) -> np.ndarray:
    """Boolean table over every team mask of ``domain``: which teams satisfy ``phi``."""
    return full_evaluator(domain, mode, caps).table(as_formula(phi))


def extension(phi, domain: Sequence[str], mode=EvalMode.LAX, caps: Caps = DEFAULT_CAPS) -> TeamProperty:
    """The team property of ``phi`` over ``domain``."""
    return TeamProperty(domain, models(phi, domain, mode, caps))


# ---------------------------------------------------------------- reports

PROPERTY_KINDS = ("flat", "union-closed", "downwards-closed", "upwards-closed", "empty-team")


@dataclass
class PropertyReport:
    kind: str
    holds: bool
    counterexample: tuple[Team, ...] | None = None
    exhaustive: bool = True
    samples: int = 0
    note: str = ""

    def __bool__(self):
        return self.holds

    def describe(self) -> str:
        verdict = "holds" if self.holds else "fails"
        out = f"{self.kind}: {verdict}"
        if not self.exhaustive:
            out += f" (sampled, {self.samples} cases)"
        if self.counterexample:
            out += " -- " + ", ".join(str(t) for t in self.counterexample)
        return out


def check_property(phi, N: Sequence[str], kind: str, mode=EvalMode.LAX,
                   caps: Caps = DEFAULT_CAPS) -> PropertyReport:
    phi = as_formula(phi)
    N = check_domain(N)
    if kind not in PROPERTY_KINDS:
        raise ValueError(f"unknown property kind {kind!r}")
    missing = free_vars(phi) - set(N)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    if len(N) <= caps.exhaustive_vars:
        prop = extension(phi, N, mode, caps)
        wit = prop.witness(kind)
        return PropertyReport(kind, wit is None, wit)
    return _sampled_property(phi, N, kind, mode, caps)


def _random_team(rng: random.Random, N: tuple[str, ...], max_size: int) -> Team:
    size = rng.randint(0, max_size)
    codes = {rng.randrange(1 << len(N)) for _ in range(size)}
    return Team.from_codes(N, codes)


def _sampled_property(phi, N, kind, mode, caps: Caps) -> PropertyReport:
    rng = random.Random(caps.seed)
    size = min(caps.max_team_size // 2, 1 << len(N))
    n = caps.samples
    sat = lambda X: eval(phi, X, mode, caps)  # noqa: E731
    for _ in range(n):
        X = _random_team(rng, N, size)
        if kind == "empty-team":
            if not sat(Team(N, 0)):
                return PropertyReport(kind, False, (Team(N, 0),), False, 1)
            return PropertyReport(kind, True, None, False, 1)
        if kind == "union-closed":
            Y = _random_team(rng, N, size)
            if sat(X) and sat(Y) and not sat(X | Y):
                return PropertyReport(kind, False, (X, Y, X | Y), False, n)
        elif kind == "downwards-closed":
            if X.mask and sat(X):
                Y = Team(N, X.mask & rng.getrandbits(1 << len(N)))
                if not sat(Y):
                    return PropertyReport(kind, False, (X, Y), False, n)
        elif kind == "upwards-closed":
            Y = Team(N, X.mask | 1 << rng.randrange(1 << len(N)))
            if X.mask and len(Y) <= caps.max_team_size and sat(X) and not sat(Y):
                return PropertyReport(kind, False, (X, Y), False, n)
        elif kind == "flat":
            singles = all(sat(Team(N, 1 << c)) for c in X.codes)
            if sat(X) != singles:
                return PropertyReport(kind, False, (X,), False, n)
    return PropertyReport(kind, True, None, False, n)


def check_locality(phi, N: Sequence[str], pad: Sequence[str], mode=EvalMode.LAX,
                   direction: str = "both", caps: Caps = DEFAULT_CAPS) -> PropertyReport:
    """Compare satisfaction on teams over ``N + pad`` with their restriction to ``N``.

    ``up``: the restriction satisfies ``phi`` implies the team does.
    ``down``: the team satisfies ``phi`` implies the restriction does.
    """
    phi = as_formula(phi)
    N = check_domain(N)
    pad = tuple(v for v in check_domain(pad) if v not in N)
    D = N + pad
    missing = free_vars(phi) - set(N)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    if direction not in ("up", "down", "both"):
        raise ValueError(f"unknown direction {direction!r}")
    big = models(phi, D, mode, caps)
    small = models(phi, N, mode, caps)
    restricted = small[projection_map(D, N)]
    bad = np.zeros_like(big)
    if direction in ("up", "both"):
        bad |= restricted & ~big
    if direction in ("down", "both"):
        bad |= big & ~restricted
    kind = f"locality-{direction}"
    if not bad.any():
        return PropertyReport(kind, True)
    sizes = lattice.popcounts(1 << len(D))
    cand = np.flatnonzero(bad)
    x = int(cand[np.lexsort((cand, sizes[cand]))[0]])
    X = Team(D, x)
    return PropertyReport(kind, False, (X, restrict(X, N)))


def singleton_truth(alpha, domain: Sequence[str]) -> list[bool]:
    """Classical truth value of ``alpha`` at each valuation code, read off singletons."""
    t = models(alpha, domain)
    return [bool(t[1 << c]) for c in range(1 << len(domain))]

