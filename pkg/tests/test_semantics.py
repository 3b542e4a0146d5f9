import pytest
from hypothesis import given, settings, strategies as st

from teamlogic.config import Caps, CapExceeded
from teamlogic.formula import parse
from teamlogic.semantics import (
    EvalMode, UnboundVariable, check_locality, check_property, eval as sat, models,
)
from teamlogic.team import Team, restrict

from oracle import all_teams, holds, mask_of
from strategies import any_formula, classical, teams, union_closed

PQRS = ("p", "q", "r", "s")
X = Team.from_rows(PQRS, ["1000", "0100", "0101", "0010"])
Y = Team.from_rows(tuple("pqrstuv"), ["0011010", "1100101", "1100100", "0110000"])


@settings(max_examples=150, deadline=None)
@given(any_formula(("p", "q")), st.sampled_from(["lax", "strict"]))
def test_tables_match_oracle_two_vars(phi, mode):
    table = models(phi, ("p", "q"), mode)
    for T in all_teams(2):
        assert table[mask_of(T)] == holds(phi, T, ("p", "q"), mode)


@settings(max_examples=100, deadline=None)
@given(any_formula(), teams(), st.sampled_from(["lax", "strict"]))
def test_eval_matches_oracle_three_vars(phi, T, mode):
    if len(T) > 5:
        T = Team(T.domain, T.mask & 0b00111011)
    assert sat(phi, T, mode) == holds(phi, T.codes, T.domain, mode)


def test_example_team_x_strict_and_lax():
    phi = parse("(p vor q) | (q vor r)")
    Xr = restrict(X, ("p", "q", "r"))
    assert sat(phi, X, "strict")
    assert not sat(phi, Xr, "strict")
    assert sat(phi, X, "lax") and sat(phi, Xr, "lax")


def test_example_team_y_strict():
    phi = parse("inc(p q ; r s) | inc(t u ; r s)")
    Yr = restrict(Y, tuple("pqrstu"))
    assert sat(phi, Y, EvalMode.STRICT)
    assert not sat(phi, Yr, EvalMode.STRICT)
    assert sat(phi, Yr, EvalMode.LAX)


@settings(max_examples=200)
@given(union_closed(), st.sampled_from(["lax", "strict"]))
def test_empty_team_property(phi, mode):
    assert sat(phi, Team(("p", "q", "r"), 0), mode)


def test_sneg_breaks_empty_team_property():
    assert not sat(parse("sneg T"), Team(("p",), 0))


@settings(max_examples=60, deadline=None)
@given(classical())
def test_classical_formulas_are_flat(phi):
    assert check_property(phi, ("p", "q", "r"), "flat")


def test_nonconst_upwards_not_downwards():
    assert check_property("ne(p)", ("p",), "upwards-closed")
    rep = check_property("ne(p)", ("p",), "downwards-closed")
    assert not rep
    big, small = rep.counterexample
    assert big.mask == 0b11 and len(small) == 1


def test_gor_not_union_closed():
    rep = check_property("p gor q", ("p", "q"), "union-closed")
    assert not rep
    a, b, ab = rep.counterexample
    assert sat("p gor q", a) and sat("p gor q", b) and not sat("p gor q", ab)


def test_strict_locality_fails_downwards_on_example():
    rep = check_locality("(p vor q) | (q vor r)", ("p", "q", "r"), ("s",), "strict", "down")
    assert not rep
    big, small = rep.counterexample
    assert sat("(p vor q) | (q vor r)", big, "strict")
    assert not sat("(p vor q) | (q vor r)", small, "strict")
    assert check_locality("(p vor q) | (q vor r)", ("p", "q", "r"), ("s",), "strict", "up")


@settings(max_examples=40, deadline=None)
@given(union_closed(("p", "q"), 4))
def test_lax_locality(phi):
    assert check_locality(phi, ("p", "q"), ("r",), "lax", "both")


@settings(max_examples=40, deadline=None)
@given(union_closed(("p", "q"), 4))
def test_strict_upward_locality(phi):
    assert check_locality(phi, ("p", "q"), ("r",), "strict", "up")


@pytest.mark.parametrize("a,b", [
    ("nabla (p | q)", "(p | q) vor T"),
    ("p vor q", "(p | q) & nabla p & nabla q"),
    ("p | ne(q)", "(p gor ne(q)) gor (p vor ne(q))"),
    ("ne(p)", "p vor !p"),
    ("ne(p)", "wneg (p gor !p)"),
    ("p gor inc(q ; r)", "wneg (wneg p & wneg inc(q ; r))"),
    ("ups(; p)", "ne(p)"),
    ("wneg const(p)", "ne(p)"),
])
def test_interdefinability(a, b):
    ta, tb = models(a, ("p", "q", "r")), models(b, ("p", "q", "r"))
    assert (ta == tb).all()


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        sat("p & q", Team(("p",), 1))


def test_caps():
    with pytest.raises(CapExceeded):
        models("p", tuple("pqrst"))
    with pytest.raises(CapExceeded):
        sat("p", Team.full(tuple("pqrst")))
    big = Team.from_codes(tuple("pqrst"), range(0, 32, 2))
    assert sat("!p & (q | !q)", big, caps=Caps(max_team_size=16))
    with pytest.raises(CapExceeded):
        sat("p", Team.full(tuple("pqrst")), caps=Caps(max_team_size=64))


def test_sampled_property_beyond_exhaustive_cap():
    rep = check_property("ne(p) | q", tuple("pqrst"), "union-closed", caps=Caps(samples=50))
    assert rep.holds and not rep.exhaustive
