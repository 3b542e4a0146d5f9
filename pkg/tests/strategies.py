"""Hypothesis strategies for formulas and teams."""

from hypothesis import strategies as st

from teamlogic.formula import (
    And, Anon, Atom, Bot, GOr, Inc, Might, Neg, NonConst, Or, ROr, SNeg, Top, WNeg,
)
from teamlogic.team import Team

VARS = ("p", "q", "r")


def variables(vs=VARS):
    return st.sampled_from(vs)


def terms(vs=VARS, consts=True):
    return st.sampled_from(vs + (("T", "B") if consts else ()))


def classical(vs=VARS, max_leaves=8):
    leaves = st.one_of(variables(vs).map(Atom), st.just(Top()), st.just(Bot()))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def inc_atoms(draw, vs=VARS, width=2, primitive=False):
    k = draw(st.integers(1, width))
    lhs_terms = st.sampled_from(("T", "B")) if primitive else terms(vs)
    lhs = tuple(draw(lhs_terms) for _ in range(k))
    rhs = tuple(draw(terms(vs)) for _ in range(k))
    return Inc(lhs, rhs)


@st.composite
def anon_atoms(draw, vs=VARS):
    lhs = tuple(draw(st.lists(variables(vs), max_size=2, unique=True)))
    rhs = tuple(draw(st.lists(variables(vs), min_size=1, max_size=2, unique=True)))
    return Anon(lhs, rhs)


def union_closed(vs=VARS, max_leaves=6):
    """Formulas built from the lax union-closed connectives and atoms."""
    leaves = st.one_of(
        classical(vs, 3),
        inc_atoms(vs),
        anon_atoms(vs),
        variables(vs).map(NonConst),
    )
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
            st.builds(ROr, sub, sub),
            sub.map(Might),
        ),
        max_leaves=max_leaves,
    )


def any_formula(vs=VARS, max_leaves=6):
    return st.recursive(
        union_closed(vs, 2),
        lambda sub: st.one_of(
            st.builds(GOr, sub, sub),
            sub.map(WNeg),
            sub.map(SNeg),
            st.builds(And, sub, sub),
            st.builds(Or, sub, sub),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def teams(draw, domain=VARS):
    n = len(domain)
    mask = draw(st.integers(0, (1 << (1 << n)) - 1))
    return Team(domain, mask)
