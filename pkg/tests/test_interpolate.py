import pytest
from hypothesis import given, settings

from teamlogic.decide import entails
from teamlogic.formula import And, Bot, Top, free_vars, parse
from teamlogic.interpolate import (
    PreconditionFailed, VariableConditionError, interpolant_sides, search_interpolant_space,
    uniform_interpolant, verify_interpolant,
)
from teamlogic.normalform import build_psi
from teamlogic.semantics import models
from teamlogic.team import Team, restrict

from strategies import union_closed

PQRS = ("p", "q", "r", "s")
X = Team.from_rows(PQRS, ["1000", "0100", "0101", "0010"])
PSI_XR = build_psi(restrict(X, ("p", "q", "r")))
PREMISE = And(PSI_XR, parse("(p vor q) | (q vor r)"))
GOAL = parse("s vor !s")


def test_projection_of_conjunction():
    r = uniform_interpolant("p & q", ("p",))
    assert (models(r.interpolant, ("p",)) == models("p", ("p",))).all()
    assert uniform_interpolant("p & q", ("p",), simplify_flat=True).fragment_used == "classical"


def test_projection_of_inclusion_is_trivial():
    r = uniform_interpolant("inc(p ; q)", ("q",))
    assert models(r.interpolant, ("q",)).all()


def test_identity_projection():
    phi = parse("inc(p ; q) vor ne(p)")
    r = uniform_interpolant(phi, ("p", "q"))
    assert (models(r.interpolant, ("p", "q")) == models(phi, ("p", "q"))).all()


def test_non_union_closed_falls_back_to_gor():
    r = uniform_interpolant("p gor q", ("p",))
    assert r.fragment_used == "gor"
    assert (models(r.interpolant, ("p",)) == r.property.table).all()
    with pytest.raises(ValueError):
        uniform_interpolant("sneg p", ("p",))


@settings(max_examples=40, deadline=None)
@given(union_closed(("p", "q", "r"), 4))
def test_interpolant_entailed_and_sound(phi):
    r = uniform_interpolant(phi, ("p", "q"))
    assert free_vars(r.interpolant) <= {"p", "q"}
    assert entails([phi], r.interpolant)
    for psi in ["p | q", "inc(p ; q)", "ne(q) | p", "p vor q", "!p | ne(q)"]:
        if entails([phi], psi):
            assert entails([r.interpolant], psi)


def test_verify_interpolant():
    assert verify_interpolant("p & q", "p", ["p", "p | r"]).ok
    assert verify_interpolant("ne(p)", Top(), [Top()]).ok
    with pytest.raises(VariableConditionError):
        verify_interpolant("p & q", "p", ["q"], vocab=("p",))
    with pytest.raises(VariableConditionError):
        verify_interpolant("p & q", "q", ["q"], vocab=("p",))


def test_search_finds_top_for_trivial_goal():
    res = search_interpolant_space(PREMISE, Top(), (), 3, domain=PQRS)
    assert res.found == Top()


def test_search_exhausts_on_failure_example():
    res = search_interpolant_space(PREMISE, GOAL, (), 3, domain=PQRS)
    assert res.exhausted
    assert sum(res.per_depth) == len(res.classes)
    assert "no interpolant" in res.describe()


@pytest.mark.parametrize("cand", [Top(), Bot(), parse("T vor T")])
def test_constant_candidates_fail_a_side(cand):
    left, right = interpolant_sides(PREMISE, cand, GOAL, PQRS)
    assert not (left.holds and right.holds)


def test_lax_variant_precondition_fails():
    with pytest.raises(PreconditionFailed) as info:
        search_interpolant_space(PREMISE, GOAL, (), 3, mode="lax", domain=PQRS)
    assert info.value.verdict.counterexample is not None


def test_search_vocab_outside_domain():
    with pytest.raises(ValueError):
        search_interpolant_space("p", "p", ("z",), 1, domain=("p",))


def test_search_with_vocab_finds_atom():
    res = search_interpolant_space("p & q", "p | r", ("p",), 2, domain=("p", "q", "r"))
    assert res.found is not None
    assert free_vars(res.found) <= {"p"}
    left, right = interpolant_sides("p & q", res.found, "p | r", ("p", "q", "r"))
    assert left and right
