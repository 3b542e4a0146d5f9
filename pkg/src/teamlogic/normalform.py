"""Canonical formulas for teams and disjunctive normal forms.

For a team ``X`` over ``N``:

* ``build_psi(X)`` holds exactly on ``X`` and the empty team,
* ``build_theta_phi(X)`` gives a classical formula true on the subteams of
  ``X`` and a conjunction of primitive inclusion atoms true on the
  supersets of ``X`` (and on the empty team),
* ``build_psi_neq(X)`` is an equivalent of ``build_psi(X)`` using only
  classical connectives and inconstancy atoms.

A union-closed property with the empty team is the set of unions of its
members, so it is described by a family of *disjunct teams*. Normal forms
are stored canonically as the union-irreducible members, sorted by bitmask.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import lattice
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .formula import (
    BOT, CONSTANTS, TOP, And, Atom, Bot, Formula, Inc, Might, Neg, NonConst,
    Or, ROr, Top, as_formula, classify, conj, disj, signed_conj, sorted_vars,
)
from .semantics import models
from .team import Team, check_domain, team_count


def _row_conj(domain: Sequence[str], code: int) -> Formula:
    return signed_conj(domain, [code >> i & 1 for i in range(len(domain))])


def build_psi(X: Team) -> Formula:
    return disj([_row_conj(X.domain, c) for c in X.codes], ROr)


def build_theta_phi(X: Team) -> tuple[Formula, Formula]:
    theta = disj([_row_conj(X.domain, c) for c in X.codes], Or)
    if not X.domain:
        return theta, Top()
    atoms = [
        Inc(tuple(TOP if c >> i & 1 else BOT for i in range(len(X.domain))), X.domain)
        for c in X.codes
    ]
    return theta, conj(atoms)


def build_psi_neq(X: Team) -> Formula:
    """The inconstancy-atom equivalent of ``build_psi(X)``, by recursion on the last variable."""
    domain = X.domain
    if not X.mask:
        return Bot()
    if not domain:
        return Top()

    def go(codes: list[int], k: int) -> Formula:
        # codes are restricted to the first k variables; k >= 1
        p = Atom(domain[k - 1])
        bit = 1 << (k - 1)
        plus = sorted({c & ~bit for c in codes if c & bit})
        minus = sorted({c for c in codes if not c & bit})
        if k == 1:
            if not minus:
                return p
            if not plus:
                return Neg(p)
            return And(Or(p, Neg(p)), NonConst(p.name))
        if not minus:
            return And(go(plus, k - 1), p)
        if not plus:
            return And(go(minus, k - 1), Neg(p))
        return And(Or(And(go(plus, k - 1), p), And(go(minus, k - 1), Neg(p))), NonConst(p.name))

    return go(X.codes, len(domain))


@dataclass(frozen=True)
class NormalForm:
    domain: tuple[str, ...]
    teams: tuple[int, ...]
    target: str = "vor"

    @property
    def disjuncts(self) -> list[Team]:
        return [Team(self.domain, m) for m in self.teams]

    def formula(self) -> Formula:
        if self.target == "vor":
            parts = [build_psi(X) for X in self.disjuncts]
        elif self.target == "inc":
            parts = [And(*build_theta_phi(X)) for X in self.disjuncts]
        elif self.target == "neq":
            parts = [build_psi_neq(X) for X in self.disjuncts]
        else:
            raise ValueError(f"unknown target {self.target!r}")
        return disj(parts, Or)

    def describe(self) -> str:
        rows = ["{" + ", ".join(X.rows()) + "}" for X in self.disjuncts]
        return f"domain {' '.join(self.domain) or '(empty)'}; {len(rows)} disjunct team(s): " + " ".join(rows)


class NotInFragment(ValueError):
    pass


SEMANTIC_FLAGS = frozenset({"classical", "uses-ror", "uses-inc", "uses-primitive-inc-only",
                            "uses-anon", "uses-nonconst", "uses-might"})
SYNTACTIC_FLAGS = frozenset({"classical", "uses-ror", "uses-inc", "uses-primitive-inc-only",
                             "uses-nonconst", "uses-might"})


def canonical_basis(table: np.ndarray) -> tuple[int, ...]:
    """Union-irreducible members of the union closure of a family table."""
    closed = lattice.union_closure(table)
    return tuple(int(m) for m in np.flatnonzero(lattice.union_irreducible(closed)))


def dnf(phi, target: str = "vor", method: str = "semantic", domain: Sequence[str] | None = None,
        caps: Caps = DEFAULT_CAPS) -> NormalForm:
    phi = as_formula(phi)
    domain = check_domain(domain) if domain is not None else sorted_vars(phi)
    flags, fv = classify(phi)
    if not fv <= set(domain):
        raise ValueError("domain does not cover the free variables")
    if target not in ("vor", "inc", "neq"):
        raise ValueError(f"unknown target {target!r}")
    if method == "semantic":
        if not flags <= SEMANTIC_FLAGS:
            raise NotInFragment("semantic DNF needs a union-closed fragment formula")
        table = models(phi, domain, caps=caps)
    elif method == "syntactic":
        if not flags <= SYNTACTIC_FLAGS:
            raise NotInFragment("syntactic DNF covers the classical, vor and inclusion fragments")
        if "uses-inc" in flags and "uses-primitive-inc-only" not in flags:
            from .translate import inc_to_primitive
            phi = inc_to_primitive(phi, caps=caps)
        table = _Families(domain, caps).family(phi)
    else:
        raise ValueError(f"unknown method {method!r}")
    return NormalForm(domain, canonical_basis(table), target)


class _Families:
    """Disjunct-team families built by structural induction on the formula."""

    def __init__(self, domain: tuple[str, ...], caps: Caps):
        if len(domain) > caps.exhaustive_vars:
            raise CapExceeded(f"|N| = {len(domain)} exceeds the cap {caps.exhaustive_vars}")
        self.domain = domain
        self.n = len(domain)
        self.size = team_count(self.n)
        self.idx = lattice.indices(1 << self.n)
        self.memo: dict[Formula, np.ndarray] = {}

    def singletons(self, pred) -> np.ndarray:
        out = np.zeros(self.size, dtype=bool)
        for c in range(1 << self.n):
            if pred(c):
                out[1 << c] = True
        return out

    def family(self, phi: Formula) -> np.ndarray:
        hit = self.memo.get(phi)
        if hit is None:
            hit = self._build(phi)
            self.memo[phi] = hit
        return hit

    def _build(self, phi: Formula) -> np.ndarray:
        if isinstance(phi, Atom):
            i = self.domain.index(phi.name)
            return self.singletons(lambda c: c >> i & 1)
        if isinstance(phi, Top):
            return self.singletons(lambda c: True)
        if isinstance(phi, Bot):
            return np.zeros(self.size, dtype=bool)
        if isinstance(phi, Neg):
            covered = 0
            for m in np.flatnonzero(self.family(phi.sub)):
                covered |= int(m)
            return self.singletons(lambda c: not covered >> c & 1)
        if isinstance(phi, Or):
            return self.family(phi.left) | self.family(phi.right)
        if isinstance(phi, ROr):
            a, b = self.family(phi.left), self.family(phi.right)
            if not a.any() or not b.any():
                return np.zeros(self.size, dtype=bool)
            return lattice.union_product(a, b)
        if isinstance(phi, Might):
            return self.family(ROr(phi.sub, Top()))
        if isinstance(phi, NonConst):
            return self.family(ROr(Atom(phi.var), Neg(Atom(phi.var))))
        if isinstance(phi, And):
            a = lattice.union_closure(self.family(phi.left))
            b = lattice.union_closure(self.family(phi.right))
            out = a & b
            out[0] = False
            return out
        if isinstance(phi, Inc):
            reg = regularize_inclusion(phi)
            if not isinstance(reg, Inc):
                return self.family(reg)
            pos = [self.domain.index(v) for v in reg.rhs]
            want = [1 if x == TOP else 0 for x in reg.lhs]
            witnesses = sum(1 << c for c in range(1 << self.n)
                            if all((c >> i & 1) == w for i, w in zip(pos, want)))
            return (self.idx & witnesses) != 0
        raise NotInFragment(f"no syntactic family for {type(phi).__name__}")


def regularize_inclusion(atom: Inc) -> Formula:
    """Rewrite a primitive inclusion atom to T, B, or an atom with distinct variables on the right."""
    if not isinstance(atom, Inc) or not atom.primitive:
        raise ValueError("regularize_inclusion needs a primitive inclusion atom")
    kept: dict[str, str] = {}
    for x, b in zip(atom.lhs, atom.rhs):
        if b in CONSTANTS:
            if b != x:
                return Bot()
            continue
        if b in kept:
            if kept[b] != x:
                return Bot()
            continue
        kept[b] = x
    if not kept:
        return Top()
    return Inc(tuple(kept.values()), tuple(kept.keys()))


def property_formula(table: np.ndarray, domain: Sequence[str], kind: type = Or) -> Formula:
    """``kind``-disjunction of Psi over every nonempty team of the table, in mask order."""
    domain = tuple(domain)
    return disj([build_psi(Team(domain, int(m))) for m in np.flatnonzero(table) if m], kind)

