import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from teamlogic.formula import And, Atom, Bot, Inc, Neg, NonConst, Or, Top, parse
from teamlogic.fuzz import random_formulas
from teamlogic.normalform import (
    NotInFragment, build_psi, build_psi_neq, build_theta_phi, dnf, regularize_inclusion,
)
from teamlogic.semantics import models
from teamlogic.team import Team

from oracle import all_teams, holds, mask_of
from strategies import union_closed

PQ = ("p", "q")


def every_team(domain):
    n = len(domain)
    return [Team(domain, m) for m in range(1 << (1 << n))]


def test_psi_small_cases():
    assert build_psi(Team(("p",), 0)) == Bot()
    assert build_psi(Team(("p",), 0b10)) == Atom("p")
    assert str(build_psi(Team(("p",), 0b11))) == "!p vor p"


@pytest.mark.parametrize("domain", [("p",), PQ])
def test_psi_defines_team_or_empty(domain):
    for X in every_team(domain):
        psi = build_psi(X)
        for Y in all_teams(len(domain)):
            assert holds(psi, Y, domain) == (mask_of(Y) in (0, X.mask))


def test_theta_phi_singleton():
    theta, phi = build_theta_phi(Team.from_rows(PQ, ["10"]))
    assert theta == And(Atom("p"), Neg(Atom("q")))
    assert phi == Inc(("T", "B"), PQ)


def test_theta_phi_define_subsets_and_supersets():
    for X in every_team(PQ):
        theta, phi = build_theta_phi(X)
        for Y in all_teams(2):
            y = mask_of(Y)
            assert holds(theta, Y, PQ) == (y & ~X.mask == 0)
            assert holds(phi, Y, PQ) == (y == 0 or X.mask & ~y == 0)


def test_psi_neq_base_cases():
    assert build_psi_neq(Team(("p",), 0b11)) == And(Or(Atom("p"), Neg(Atom("p"))), NonConst("p"))
    assert build_psi_neq(Team(("p",), 0b10)) == Atom("p")


@pytest.mark.parametrize("domain", [("p",), PQ, ("p", "q", "r")])
def test_psi_neq_equivalent_to_psi(domain):
    for X in every_team(domain):
        assert (models(build_psi_neq(X), domain) == models(build_psi(X), domain)).all()


def test_dnf_examples():
    assert dnf("B", domain=("p",)).teams == ()
    assert dnf("p").disjuncts == [Team.from_rows(("p",), ["1"])]
    assert dnf("p vor !p").disjuncts == [Team(("p",), 0b11)]


@pytest.mark.parametrize("atom,expected", [
    ("inc(T B ; p p)", Bot()),
    ("inc(T T ; p p)", Inc(("T",), ("p",))),
    ("inc(T ; T)", Top()),
    ("inc(B ; T)", Bot()),
    ("inc(T B ; p q)", Inc(("T", "B"), PQ)),
])
def test_regularize_inclusion(atom, expected):
    assert regularize_inclusion(parse(atom)) == expected


def test_regularize_rejects_non_primitive():
    with pytest.raises(ValueError):
        regularize_inclusion(parse("inc(p ; q)"))


def test_dnf_rejects_out_of_fragment():
    with pytest.raises(NotInFragment):
        dnf("p gor q")
    with pytest.raises(NotInFragment):
        dnf("ups(p ; q)", method="syntactic")


@pytest.mark.parametrize("target", ["vor", "inc", "neq"])
@settings(max_examples=40, deadline=None)
@given(phi=union_closed(PQ, 5))
def test_dnf_formula_equivalent(target, phi):
    nf = dnf(phi, target, domain=PQ)
    assert (models(nf.formula(), PQ) == models(phi, PQ)).all()


@settings(max_examples=60, deadline=None)
@given(union_closed(("p", "q", "r"), 5))
def test_semantic_and_syntactic_routes_agree(phi):
    try:
        syn = dnf(phi, method="syntactic", domain=("p", "q", "r"))
    except NotInFragment:
        return
    assert syn == dnf(phi, method="semantic", domain=("p", "q", "r"))


def test_canonical_basis_is_union_irreducible():
    nf = dnf("inc(p ; q)")
    teams = set(nf.teams)
    for a, b in itertools.combinations(teams, 2):
        assert a | b not in teams or a | b in (a, b)
    table = models("inc(p ; q)", PQ)
    closure = {0}
    for k in range(1, len(teams) + 1):
        for combo in itertools.combinations(teams, k):
            u = 0
            for t in combo:
                u |= t
            closure.add(u)
    assert closure == set(np.flatnonzero(table).tolist())


@pytest.mark.parametrize("fragment", ["vor", "inc0", "anon", "neq", "might"])
def test_fuzzed_dnf_round_trip(fragment):
    for phi in random_formulas(fragment, 15, seed=7, variables=("p", "q")):
        nf = dnf(phi, domain=PQ)
        assert (models(nf.formula(), PQ) == models(phi, PQ)).all(), phi


def test_describe():
    assert dnf("p vor !p").describe() == "domain p; 1 disjunct team(s): {0, 1}"
