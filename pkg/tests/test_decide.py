import pytest
from hypothesis import given, settings

from teamlogic.decide import (
    EntailmentQuery, entails, entails_bruteforce, entails_nf, equivalent, union_cover,
)
from teamlogic.formula import And, parse
from teamlogic.normalform import build_psi, build_theta_phi
from teamlogic.team import Team, restrict

from oracle import all_teams, holds
from strategies import union_closed

PQRS = ("p", "q", "r", "s")
X = Team.from_rows(PQRS, ["1000", "0100", "0101", "0010"])
PSI_XR = build_psi(restrict(X, ("p", "q", "r")))


def test_simple_entailment():
    assert entails(["p"], "p | q")
    assert not entails(["p | q"], "p")


def test_strict_needs_domain():
    with pytest.raises(ValueError):
        EntailmentQuery(("p",), "p", mode="strict")
    with pytest.raises(ValueError):
        EntailmentQuery(("p",), "q", domain=("p",))


def test_filtered_strict_entailment():
    premise = And(PSI_XR, parse("(p vor q) | (q vor r)"))
    v = entails([premise], "s vor !s", PQRS, "strict", filter=PSI_XR)
    assert v.holds and v.restricted and v.reverified


def test_top_vor_top_counterexample():
    v = entails(["T vor T"], "s vor !s", PQRS, "strict")
    assert not v
    cex = v.counterexample
    assert len(cex) == 2
    assert len({row[3] for row in cex.rows()}) == 1
    # an all-s=1 pair refutes as well
    alt = Team.from_rows(PQRS, ["0001", "1001"])
    assert holds(parse("T vor T"), alt.codes, PQRS, "strict")
    assert not holds(parse("s vor !s"), alt.codes, PQRS, "strict")


def test_counterexample_is_minimal_and_real():
    v = entails(["inc(p ; q)"], "p | !q")
    assert not v
    T = v.counterexample
    assert holds(parse("inc(p ; q)"), T.codes, T.domain)
    assert not holds(parse("p | !q"), T.codes, T.domain)


def test_union_cover():
    a, b = 0b01, 0b10
    assert union_cover(a | b, [a, b])
    assert not union_cover(a, [a | b])


def test_psi_union_cover_cases():
    dom = ("p",)
    big = build_psi(Team(dom, 0b11))
    one = build_psi(Team(dom, 0b01))
    two = build_psi(Team(dom, 0b10))
    assert entails_nf(big, parse(f"({one}) | ({two})"))
    v = entails_nf(one, big)
    assert not v and v.counterexample.mask == 0b01
    assert not entails([one], big)


def test_theta_phi_equivalence():
    for m in range(16):
        Xq = Team(("p", "q"), m)
        assert equivalent(build_psi(Xq), And(*build_theta_phi(Xq)))


def test_equivalence_examples():
    assert equivalent("p vor q", "(p | q) & nabla p & nabla q")
    v = equivalent("p", "q")
    assert not v
    assert v.counterexample.rows() in (["10"], ["01"])


def test_restricted_only_note():
    v = entails(["p | !p"], "p", ("p",), "lax", filter="p")
    assert v.holds and v.reverified is False and "restricted" in v.note


def brute(phi, psi, domain):
    return all(holds(psi, T, domain) for T in all_teams(len(domain)) if holds(phi, T, domain))


@settings(max_examples=60, deadline=None)
@given(union_closed(("p", "q"), 4), union_closed(("p", "q"), 4))
def test_nf_and_bruteforce_agree(phi, psi):
    dom = ("p", "q")
    q = EntailmentQuery((phi,), psi, dom)
    bf = entails_bruteforce(q)
    assert bool(entails_nf(phi, psi)) == bf.holds
    assert bf.holds == brute(phi, psi, dom)


@settings(max_examples=40, deadline=None)
@given(union_closed(("p", "q"), 4))
def test_self_entailment(phi):
    assert entails_nf(phi, phi)
    assert entails_nf(phi, phi, method="semantic")
