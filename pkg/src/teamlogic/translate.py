"""Equivalence-preserving rewrites between the team logics.

Each rewrite is applied bottom-up to every matching node and raises
:class:`OutsideFragment` when the input has no node it applies to. Classical
subformulas under ``!`` are never rewritten (negation must stay classical).
Big conjunctions and disjunctions over sign vectors list ``T`` before ``B``
position by position, so ``inc(p ; q)`` becomes
``(!p | inc(T ; q)) & (!!p | inc(B ; q))``.
"""

from __future__ import annotations

import itertools
from typing import Callable

from .config import DEFAULT_CAPS, CapExceeded, Caps
from .formula import (
    BOT, TOP, And, Anon, Bot, Formula, GOr, Inc, Might, Neg, NonConst, Or, ROr, Top,
    WNeg, as_formula, conj, disj, literal, signed_conj,
)
from .team import Team

REWRITES = (
    "inc-to-primitive", "anon-to-vor", "neq-split", "vor-to-might", "might-to-vor",
    "or-via-gor", "gor-via-wneg", "neq-via-wneg", "psi-to-inc", "psi-to-neq",
)


class OutsideFragment(ValueError):
    pass


def sign_vectors(k: int) -> list[tuple[str, ...]]:
    return list(itertools.product((TOP, BOT), repeat=k))


def _map(phi: Formula, fn: Callable[[Formula], Formula | None]) -> Formula:
    """Rebuild ``phi`` bottom-up, replacing nodes where ``fn`` returns a formula."""
    if isinstance(phi, Neg):
        return phi
    kids = phi.children()
    if kids:
        new = [_map(k, fn) for k in kids]
        if any(a is not b for a, b in zip(new, kids)):
            phi = type(phi)(*new)
    out = fn(phi)
    return phi if out is None else out


def _rewritable(phi: Formula):
    """Nodes not below a negation."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if not isinstance(node, Neg):
            stack.extend(node.children())


def _require(phi: Formula, types: tuple[type, ...], rule: str) -> None:
    if not any(isinstance(n, types) for n in _rewritable(phi)):
        raise OutsideFragment(f"{rule} does not apply to {phi}")


def inclusion_expansion(atom: Inc) -> Formula:
    """``a <= b`` as the conjunction over sign vectors x of ``a^x -> x <= b``."""
    parts = [Or(Neg(signed_conj(atom.lhs, x)), Inc(x, atom.rhs))
             for x in sign_vectors(len(atom.lhs))]
    return conj(parts)


def inc_to_primitive(phi, caps: Caps = DEFAULT_CAPS) -> Formula:
    phi = as_formula(phi)
    _require(phi, (Inc,), "inc-to-primitive")

    def fn(node):
        if isinstance(node, Inc) and not node.primitive:
            if len(node.lhs) > caps.inc_width:
                raise CapExceeded(f"inclusion width {len(node.lhs)} exceeds cap {caps.inc_width}")
            return inclusion_expansion(node)
        return None

    return _map(phi, fn)


def _anon_parts(lhs: tuple[str, ...], q: str, tail: Callable[[str], Formula]) -> Formula:
    if not lhs:
        return tail(q)
    return disj([And(signed_conj(lhs, x), tail(q)) for x in sign_vectors(len(lhs))], Or)


def split_anon(atom: Anon, tail: Callable[[str], Formula]) -> Formula:
    if not atom.rhs:
        return Bot()
    return disj([_anon_parts(atom.lhs, q, tail) for q in atom.rhs], Or)


def neq_split(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (Anon,), "neq-split")
    return _map(phi, lambda n: split_anon(n, NonConst) if isinstance(n, Anon) else None)


def _ne_vor(q: str) -> Formula:
    return ROr(literal(q, 1), literal(q, 0))


def anon_to_vor(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (Anon, NonConst), "anon-to-vor")

    def fn(node):
        if isinstance(node, Anon):
            return split_anon(node, _ne_vor)
        if isinstance(node, NonConst):
            return _ne_vor(node.var)
        return None

    return _map(phi, fn)


def vor_to_might(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (ROr,), "vor-to-might")
    return _map(phi, lambda n: And(And(Or(n.left, n.right), Might(n.left)), Might(n.right))
                if isinstance(n, ROr) else None)


def might_to_vor(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (Might,), "might-to-vor")
    return _map(phi, lambda n: ROr(n.sub, Top()) if isinstance(n, Might) else None)


def or_via_gor(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (Or,), "or-via-gor")
    return _map(phi, lambda n: GOr(GOr(n.left, n.right), ROr(n.left, n.right))
                if isinstance(n, Or) else None)


def gor_via_wneg(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (GOr,), "gor-via-wneg")
    return _map(phi, lambda n: WNeg(And(WNeg(n.left), WNeg(n.right)))
                if isinstance(n, GOr) else None)


def neq_via_wneg(phi) -> Formula:
    phi = as_formula(phi)
    _require(phi, (NonConst,), "neq-via-wneg")
    return _map(phi, lambda n: WNeg(GOr(literal(n.var, 1), literal(n.var, 0)))
                if isinstance(n, NonConst) else None)


def psi_lower(X: Team, target: str) -> Formula:
    """The inclusion-atom or inconstancy-atom equivalent of ``Psi_X``."""
    from .normalform import build_psi_neq, build_theta_phi

    if target == "inc":
        if not X.mask:
            return Bot()
        return And(*build_theta_phi(X))
    if target == "neq":
        return build_psi_neq(X)
    raise ValueError(f"unknown target {target!r}")


def _psi_translate(phi, target: str, caps: Caps) -> Formula:
    from .normalform import NotInFragment, dnf

    phi = as_formula(phi)
    try:
        nf = dnf(phi, "vor", "semantic", caps=caps)
    except NotInFragment as exc:
        raise OutsideFragment(str(exc)) from None
    return disj([psi_lower(X, target) for X in nf.disjuncts], Or)


def translate(phi, rule: str, caps: Caps = DEFAULT_CAPS) -> Formula:
    phi = as_formula(phi)
    table = {
        "inc-to-primitive": lambda f: inc_to_primitive(f, caps),
        "anon-to-vor": anon_to_vor,
        "neq-split": neq_split,
        "vor-to-might": vor_to_might,
        "might-to-vor": might_to_vor,
        "or-via-gor": or_via_gor,
        "gor-via-wneg": gor_via_wneg,
        "neq-via-wneg": neq_via_wneg,
        "psi-to-inc": lambda f: _psi_translate(f, "inc", caps),
        "psi-to-neq": lambda f: _psi_translate(f, "neq", caps),
    }
    if rule not in table:
        raise ValueError(f"unknown rewrite {rule!r}; choose from {', '.join(REWRITES)}")
    return table[rule](phi)

