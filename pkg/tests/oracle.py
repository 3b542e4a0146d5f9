"""Naive reference evaluator for the tests.

Teams are frozensets of valuation codes; every splitting clause enumerates
subteams directly. Slow but written straight from the clauses, sharing no
code with the package's table-based evaluator.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from teamlogic.formula import (
    And, Anon, Atom, Bot, Const, GOr, Inc, Might, Neg, NonConst, Or, ROr, SNeg, Top, WNeg,
)


def subteams(X):
    xs = sorted(X)
    for k in range(len(xs) + 1):
        for c in combinations(xs, k):
            yield frozenset(c)


def _val(term, code, domain):
    if term == "T":
        return 1
    if term == "B":
        return 0
    return code >> domain.index(term) & 1


def holds(phi, X, domain, mode="lax"):
    return _holds(phi, frozenset(X), tuple(domain), mode)


@lru_cache(maxsize=None)
def _holds(phi, X, domain, mode):
    rec = lambda f, Y: _holds(f, Y, domain, mode)  # noqa: E731
    if isinstance(phi, Atom):
        return all(_val(phi.name, v, domain) for v in X)
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return not X
    if isinstance(phi, Neg):
        return all(not rec(phi.sub, frozenset([v])) for v in X)
    if isinstance(phi, And):
        return rec(phi.left, X) and rec(phi.right, X)
    if isinstance(phi, GOr):
        return rec(phi.left, X) or rec(phi.right, X)
    if isinstance(phi, (Or, ROr)):
        if isinstance(phi, ROr) and not X:
            return True
        for Y in subteams(X):
            rests = [X - Y] if mode == "strict" else [Z | (X - Y) for Z in subteams(Y)]
            for Z in rests:
                if isinstance(phi, ROr) and not (Y and Z):
                    continue
                if rec(phi.left, Y) and rec(phi.right, Z):
                    return True
        return False
    if isinstance(phi, Might):
        return not X or any(Y and rec(phi.sub, Y) for Y in subteams(X))
    if isinstance(phi, WNeg):
        return not X or not rec(phi.sub, X)
    if isinstance(phi, SNeg):
        return not rec(phi.sub, X)
    if isinstance(phi, Inc):
        vals = lambda ts, c: tuple(_val(t, c, domain) for t in ts)  # noqa: E731
        rhs = {vals(phi.rhs, u) for u in X}
        return all(vals(phi.lhs, v) in rhs for v in X)
    if isinstance(phi, (Anon, NonConst)):
        lhs, rhs = (phi.lhs, phi.rhs) if isinstance(phi, Anon) else ((), (phi.var,))
        vals = lambda ts, c: tuple(_val(t, c, domain) for t in ts)  # noqa: E731
        return all(
            any(vals(lhs, u) == vals(lhs, v) and vals(rhs, u) != vals(rhs, v) for u in X)
            for v in X
        )
    if isinstance(phi, Const):
        return len({_val(phi.var, v, domain) for v in X}) <= 1
    raise TypeError(phi)


def all_teams(n):
    return [frozenset(c for c in range(1 << n) if mask >> c & 1) for mask in range(1 << (1 << n))]


def mask_of(X):
    return sum(1 << c for c in X)
