"""Rule schemas for the three natural deduction systems.

A schema takes the premise conclusions and the node's conclusion and either
raises :class:`Mismatch` or returns, per premise slot, the formulas an
assumption discharged in that slot may have. Matching is strict structural
equality: no associativity or commutativity is absorbed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from ..formula import (
    CONSTANTS, And, Atom, Bot, Formula, Inc, Neg, Or, ROr, Top, conj, disj,
    free_vars, is_classical, render, signed_conj,
)
from ..translate import inclusion_expansion


class Mismatch(Exception):
    """Raised by a schema; the checker turns it into a SchemaMismatch."""


class NotPrimitive(Exception):
    """Raised by a schema whose inclusion atom must be primitive."""


Shapes = tuple[tuple[Formula, ...], ...]


@dataclass(frozen=True)
class Rule:
    name: str
    arity: int | None  # None: variadic (at least ``min_arity``)
    schema: Callable[[Sequence[Formula], Formula], Shapes]
    classical_slots: tuple[int, ...] = ()
    min_arity: int = 0
    group: str = "classical"


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise Mismatch(msg)


def _as(f: Formula, cls: type, what: str):
    _need(isinstance(f, cls), f"expected {what}, got {render(f)}")
    return f


def _none(n: int) -> Shapes:
    return ((),) * n


# -------------------------------------------------------- classical

def top_i(p, c):
    _need(isinstance(c, Top), "conclusion must be T")
    return ()


def neg_i(p, c):
    _as(p[0], Bot, "B as the premise")
    c = _as(c, Neg, "a negation")
    return ((c.sub,),)


def neg_e(p, c):
    neg = _as(p[1], Neg, "a negation as the second premise")
    _need(neg.sub == p[0], "second premise must negate the first")
    return _none(2)


def raa(p, c):
    _as(p[0], Bot, "B as the premise")
    _need(is_classical(c), "RAA concludes a classical formula")
    return ((Neg(c),),)


def and_i(p, c):
    _need(c == And(p[0], p[1]), "conclusion must conjoin the premises in order")
    return _none(2)


def and_e_l(p, c):
    a = _as(p[0], And, "a conjunction")
    _need(c == a.left, "conclusion must be the left conjunct")
    return _none(1)


def and_e_r(p, c):
    a = _as(p[0], And, "a conjunction")
    _need(c == a.right, "conclusion must be the right conjunct")
    return _none(1)


def or_i_l(p, c):
    o = _as(c, Or, "a disjunction")
    _need(o.left == p[0], "premise must be the left disjunct")
    return _none(1)


def or_i_r(p, c):
    o = _as(c, Or, "a disjunction")
    _need(o.right == p[0], "premise must be the right disjunct")
    return _none(1)


def or_e(p, c):
    o = _as(p[0], Or, "a disjunction as the major premise")
    _need(p[1] == c and p[2] == c, "minor premises must equal the conclusion")
    return ((), (o.left,), (o.right,))


# --------------------------------------------- relevant disjunction

def ror_i(p, c):
    _need(c == ROr(p[0], p[1]), "conclusion must be the premises joined by vor")
    return _none(2)


def ror_sub(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    _need(c == ROr(p[1], r.right), "conclusion must replace the left disjunct by the derived formula")
    return ((), (r.left,))


def ror_com(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    _need(c == ROr(r.right, r.left), "conclusion must swap the disjuncts")
    return _none(1)


def ror_ass(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    inner = _as(r.right, ROr, "phi vor (psi vor chi)")
    _need(c == ROr(ROr(r.left, inner.left), inner.right), "conclusion must be (phi vor psi) vor chi")
    return _none(1)


def or_e_ror(p, c):
    o = _as(p[0], Or, "a disjunction as the major premise")
    _need(p[1] == c and p[2] == c and p[3] == c, "minor premises must equal the conclusion")
    return ((), (o.left,), (o.right,), (ROr(o.left, o.right),))


def ror_or_tr(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    _need(c == Or(r.left, r.right), "conclusion must be the same disjuncts joined by |")
    return _none(1)


def ror_bot_e(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    _as(r.right, Bot, "B as the right disjunct")
    return _none(1)


def dstr_ror_or(p, c):
    r = _as(p[0], ROr, "a vor-disjunction")
    o = _as(r.right, Or, "phi vor (psi | chi)")
    _need(c == Or(ROr(r.left, o.left), ROr(r.left, o.right)),
          "conclusion must be (phi vor psi) | (phi vor chi)")
    return _none(1)


# -------------------------------------------------- inclusion atoms

def _inc(f: Formula, what: str = "an inclusion atom") -> Inc:
    return _as(f, Inc, what)


def _primitive(f: Formula) -> Inc:
    atom = _inc(f)
    if not atom.primitive:
        raise NotPrimitive(f"{render(atom)} is not primitive")
    return atom


def inc_exc(p, c):
    a, b = _inc(p[0]), _inc(c)
    n = len(a.lhs)
    _need(len(b.lhs) == n, "exchange keeps the width")
    for i in range(n + 1):
        for j in range(i, n + 1):
            perm = list(range(i, j)) + list(range(i)) + list(range(j, n))
            if tuple(a.lhs[k] for k in perm) == b.lhs and tuple(a.rhs[k] for k in perm) == b.rhs:
                return _none(1)
    raise Mismatch("conclusion is not a block exchange of the premise on both sides")


def inc_ctr(p, c):
    a, b = _inc(p[0]), _inc(c)
    k = len(b.lhs)
    _need(k <= len(a.lhs) and a.lhs[:k] == b.lhs and a.rhs[:k] == b.rhs,
          "conclusion must be a prefix of the premise on both sides")
    return _none(1)


def inc_wk(p, c):
    a, b = _inc(p[0]), _inc(c)
    k = len(b.lhs) - len(a.lhs)
    _need(k >= 1 and b.lhs == a.lhs[:k] + a.lhs and b.rhs == a.rhs[:k] + a.rhs,
          "conclusion must repeat a prefix of the premise on both sides")
    return _none(1)


def inc_trs(p, c):
    a, b = _inc(p[0]), _inc(p[1])
    _need(b.lhs == a.rhs, "second premise must start where the first ends")
    _need(c == Inc(a.lhs, b.rhs), "conclusion must chain the premises")
    return _none(2)


def inc_id(p, c):
    a = _inc(c)
    _need(a.lhs == a.rhs, "both sides must agree")
    return ()


def _leaf_symbol(f: Formula) -> str | None:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return CONSTANTS[0]
    if isinstance(f, Bot):
        return CONSTANTS[1]
    return None


def _substituted(src: Formula, dst: Formula, subst: dict[str, set[str]]) -> bool:
    """Is ``dst`` obtained from ``src`` by replacing each leaf ``b_i`` by some ``a_i``?"""
    sym = _leaf_symbol(src)
    if sym is not None:
        out = _leaf_symbol(dst)
        if sym in subst:
            return out in subst[sym]
        return out == sym
    if type(src) is not type(dst):
        return False
    ks, kd = src.children(), dst.children()
    return len(ks) == len(kd) and all(_substituted(x, y, subst) for x, y in zip(ks, kd))


def inc_cmp(p, c):
    atom = _inc(p[0])
    alpha = p[1]
    _need(is_classical(alpha) and is_classical(c), "compression acts on classical formulas")
    _need(free_vars(alpha) <= set(atom.rhs), "the cited formula may only use symbols of the right side")
    subst: dict[str, set[str]] = {}
    for a, b in zip(atom.lhs, atom.rhs):
        subst.setdefault(b, set()).add(a)
    _need(_substituted(alpha, c, subst), "conclusion is not the cited formula with a put for b")
    return _none(2)


def _ext(const: str, with_var: int | None):
    def schema(p, c):
        if with_var is None:
            a = _primitive(p[0])
            head = const
        else:
            lit = p[0]
            if with_var:
                head = _as(lit, Atom, "a propositional variable").name
            else:
                head = _as(_as(lit, Neg, "a negated variable").sub, Atom, "a negated variable").name
            a = _primitive(p[1])
        _need(c == Inc((const,) + a.lhs, (head,) + a.rhs), "conclusion must extend both sides at the front")
        return _none(len(p))
    return schema


def or_inc0_e(p, c):
    o = _as(p[0], Or, "(phi & x <= a) | psi")
    left = _as(o.left, And, "(phi & x <= a) | psi")
    atom = _inc(left.right, "(phi & x <= a) | psi")
    if not atom.primitive:
        raise NotPrimitive(f"{render(atom)} is not primitive")
    _need(p[1] == c and p[2] == c and p[3] == c, "minor premises must equal the conclusion")
    return ((), (left.left, atom), (o.right,), (Or(left.left, o.right), atom))


def inc0_dst(p, c):
    o = _as(p[0], Or, "a disjunction as the first premise")
    atoms = [_primitive(f) for f in p[1:]]
    body = disj([o.left] + [signed_conj(a.rhs, a.lhs) for a in atoms], Or)
    want = Or(conj([body] + atoms), o.right)
    _need(c == want, f"conclusion must be {render(want)}")
    return _none(len(p))


# ---------------------------------------------- inclusion expansion

def inc_ext(p, c):
    atom = _inc(c)
    _need(p[0] == inclusion_expansion(atom),
          "premise must conjoin a^x -> x <= b over every sign vector in order")
    return _none(1)


def inc_rdt(p, c):
    atom = _inc(p[0])
    o = _as(c, Or, "a^x -> x <= b")
    tail = _inc(o.right, "a^x -> x <= b")
    _need(all(x in CONSTANTS for x in tail.lhs) and tail.rhs == atom.rhs,
          "the consequent must be x <= b for a sign vector x")
    _need(o.left == Neg(signed_conj(atom.lhs, tail.lhs)), "the antecedent must be a^x")
    return _none(1)


RULES: dict[str, Rule] = {r.name: r for r in [
    Rule("TopI", 0, top_i),
    Rule("NegI", 1, neg_i, (0,)),
    Rule("NegE", 2, neg_e),
    Rule("RAA", 1, raa, (0,)),
    Rule("AndI", 2, and_i),
    Rule("AndE-L", 1, and_e_l),
    Rule("AndE-R", 1, and_e_r),
    Rule("OrI-L", 1, or_i_l),
    Rule("OrI-R", 1, or_i_r),
    Rule("OrE", 3, or_e, (1, 2)),
    Rule("RorI", 2, ror_i, group="vor"),
    Rule("RorSub", 2, ror_sub, (1,), group="vor"),
    Rule("RorCom", 1, ror_com, group="vor"),
    Rule("RorAss", 1, ror_ass, group="vor"),
    Rule("OrE-Ror", 4, or_e_ror, group="vor"),
    Rule("RorOrTr", 1, ror_or_tr, group="vor"),
    Rule("RorBotE", 1, ror_bot_e, group="vor"),
    Rule("DstrRorOr", 1, dstr_ror_or, group="vor"),
    Rule("IncExc", 1, inc_exc, group="inclusion"),
    Rule("IncCtr", 1, inc_ctr, group="inclusion"),
    Rule("IncWk", 1, inc_wk, group="inclusion"),
    Rule("IncTrs", 2, inc_trs, group="inclusion"),
    Rule("IncId", 0, inc_id, group="inclusion"),
    Rule("IncCmp", 2, inc_cmp, group="inclusion"),
    Rule("Inc0Ext-TT", 1, _ext(CONSTANTS[0], None), group="inclusion"),
    Rule("Inc0Ext-pT", 2, _ext(CONSTANTS[0], 1), group="inclusion"),
    Rule("Inc0Ext-BB", 1, _ext(CONSTANTS[1], None), group="inclusion"),
    Rule("Inc0Ext-pB", 2, _ext(CONSTANTS[1], 0), group="inclusion"),
    Rule("OrInc0E", 4, or_inc0_e, group="inclusion"),
    Rule("Inc0Dst", None, inc0_dst, min_arity=2, group="inclusion"),
    Rule("IncExt", 1, inc_ext, group="expansion"),
    Rule("IncRdt", 1, inc_rdt, group="expansion"),
]}

RULE_NAMES = tuple(RULES)
