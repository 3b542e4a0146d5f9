"""Entailment and equivalence: brute force over teams, and by normal forms."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .config import DEFAULT_CAPS, Caps
from .formula import Formula, as_formula, free_vars, sorted_vars
from .semantics import EvalMode, as_mode, full_evaluator
from .team import Team, check_domain


@dataclass
class EntailmentQuery:
    premises: tuple[Formula, ...]
    conclusion: Formula
    domain: tuple[str, ...] | None = None
    mode: EvalMode = EvalMode.LAX

    def __post_init__(self):
        self.premises = tuple(as_formula(p) for p in self.premises)
        self.conclusion = as_formula(self.conclusion)
        self.mode = as_mode(self.mode)
        needed = set()
        for f in self.premises + (self.conclusion,):
            needed |= free_vars(f)
        if self.domain is None:
            if self.mode is EvalMode.STRICT:
                raise ValueError("strict entailment needs an explicit domain")
            self.domain = tuple(sorted(needed))
        else:
            self.domain = check_domain(self.domain)
            if not needed <= set(self.domain):
                raise ValueError(f"domain misses {sorted(needed - set(self.domain))}")


@dataclass
class Verdict:
    holds: bool
    counterexample: Team | None = None
    restricted: bool = False
    reverified: bool | None = None
    note: str = ""
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.holds


def _minimal(bad: np.ndarray, m: int) -> int:
    cand = np.flatnonzero(bad)
    sizes = lattice.popcounts(m)
    return int(cand[np.lexsort((cand, sizes[cand]))[0]])


def _scan(q: EntailmentQuery, domain, filter_phi, max_team_size, caps) -> tuple[bool, int | None]:
    ev = full_evaluator(domain, q.mode, caps)
    ok = np.ones(1 << (1 << len(domain)), dtype=bool)
    for p in q.premises:
        ok &= ev.table(p)
    if filter_phi is not None:
        ok &= ev.table(filter_phi)
    if max_team_size is not None:
        ok &= lattice.popcounts(1 << len(domain)) <= max_team_size
    bad = ok & ~ev.table(q.conclusion)
    if not bad.any():
        return True, None
    return False, _minimal(bad, 1 << len(domain))


def entails_bruteforce(q: EntailmentQuery, filter=None, max_team_size: int | None = None,
                       caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Check every team over the query's domain (optionally restricted).

    Under lax semantics the domain shrinks to the free variables, which is
    sound by locality. Strict queries always use the given domain.
    """
    filter_phi = as_formula(filter) if filter is not None else None
    domain = q.domain
    if q.mode is EvalMode.LAX:
        used = set()
        for f in q.premises + (q.conclusion,) + ((filter_phi,) if filter_phi else ()):
            used |= free_vars(f)
        domain = tuple(v for v in domain if v in used)
    restricted = filter_phi is not None or max_team_size is not None
    holds, cex = _scan(q, domain, filter_phi, max_team_size, caps)
    verdict = Verdict(holds, Team(domain, cex) if cex is not None else None, restricted)
    if holds and restricted:
        try:
            again, cex2 = _scan(q, domain, None, None, caps)
        except ValueError as exc:
            verdict.note = f"unrestricted re-check skipped: {exc}"
        else:
            verdict.reverified = again
            if not again:
                verdict.note = f"holds only on the restricted space; unrestricted counterexample {Team(domain, cex2)}"
    return verdict


def entails(premises: Sequence, conclusion, domain=None, mode=EvalMode.LAX, **kw) -> Verdict:
    return entails_bruteforce(EntailmentQuery(tuple(premises), conclusion, domain, mode), **kw)


def union_cover(X: int, family: Sequence[int]) -> bool:
    """Is ``X`` the union of the members of ``family`` contained in it?"""
    acc = 0
    for Y in family:
        if Y & ~X == 0:
            acc |= Y
    return acc == X


def entails_nf(phi, psi, method: str = "auto", caps: Caps = DEFAULT_CAPS) -> Verdict:
    """Lax entailment between union-closed formulas via their normal forms.

    ``phi`` entails ``psi`` iff every disjunct team of ``phi`` is a union of
    disjunct teams of ``psi``.
    """
    from .normalform import SYNTACTIC_FLAGS, dnf
    from .formula import classify

    phi, psi = as_formula(phi), as_formula(psi)
    domain = sorted_vars(phi, psi)

    def compile_(f):
        m = method
        if m == "auto":
            m = "syntactic" if classify(f)[0] <= SYNTACTIC_FLAGS else "semantic"
        return dnf(f, "vor", m, domain, caps)

    xs = compile_(phi).teams
    ys = compile_(psi).teams
    for X in xs:
        if not union_cover(X, ys):
            return Verdict(False, Team(domain, X), note="disjunct team is not a union of the other side's")
    return Verdict(True)


def equivalent(phi, psi, domain=None, mode=EvalMode.LAX, caps: Caps = DEFAULT_CAPS) -> Verdict:
    phi, psi = as_formula(phi), as_formula(psi)
    fwd = entails_bruteforce(EntailmentQuery((phi,), psi, domain, mode), caps=caps)
    if not fwd:
        fwd.details["direction"] = "left-to-right"
        return fwd
    back = entails_bruteforce(EntailmentQuery((psi,), phi, domain, mode), caps=caps)
    if not back:
        back.details["direction"] = "right-to-left"
    return back
