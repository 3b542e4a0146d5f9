import pytest

from teamlogic.formula import Bot, GOr, Inc, classify, parse, subformulas
from teamlogic.fuzz import random_formulas
from teamlogic.semantics import models
from teamlogic.team import Team
from teamlogic.translate import (
    REWRITES, OutsideFragment, inc_to_primitive, psi_lower, sign_vectors, translate,
)
from teamlogic.normalform import build_psi

PQR = ("p", "q", "r")


def same(a, b, domain=PQR):
    return bool((models(a, domain) == models(b, domain)).all())


@pytest.mark.parametrize("src,rule,out", [
    ("inc(p ; q)", "inc-to-primitive", "(!p | inc(T ; q)) & (!!p | inc(B ; q))"),
    ("ne(p)", "anon-to-vor", "p vor !p"),
    ("ups(p ; q)", "neq-split", "p & ne(q) | !p & ne(q)"),
    ("nabla p", "might-to-vor", "p vor T"),
    ("p | q", "or-via-gor", "p gor q gor (p vor q)"),
    ("ups(p ; )", "anon-to-vor", "B"),
    ("p vor q", "vor-to-might", "(p | q) & nabla p & nabla q"),
    ("ne(p)", "neq-via-wneg", "wneg (p gor !p)"),
    ("B", "psi-to-inc", "B"),
    ("B", "psi-to-neq", "B"),
])
def test_rewrite_examples(src, rule, out):
    assert str(translate(src, rule)) == out


def test_psi_lower_singleton():
    X = Team.from_rows(("p", "q"), ["10"])
    assert str(psi_lower(X, "inc")) == "p & !q & inc(T B ; p q)"
    assert psi_lower(Team(("p",), 0), "neq") == Bot()


def test_sign_vectors_top_first():
    assert sign_vectors(2) == [("T", "T"), ("T", "B"), ("B", "T"), ("B", "B")]


def test_rewrite_outside_fragment():
    with pytest.raises(OutsideFragment):
        translate("p & q", "anon-to-vor")
    with pytest.raises(OutsideFragment):
        translate("p gor q", "psi-to-inc")
    with pytest.raises(ValueError):
        translate("p", "no-such-rule")


def test_negated_subformulas_untouched():
    assert str(translate("!(p | q) & (p | q)", "or-via-gor")) == "!(p | q) & (p gor q gor (p vor q))"


def test_compositions_remove_atoms():
    phi = parse("ups(p q ; r) | ne(q) & inc(p q ; r r)")
    out = translate(translate(phi, "neq-split"), "anon-to-vor")
    assert "uses-anon" not in classify(out)[0] and "uses-nonconst" not in classify(out)[0]
    prim = inc_to_primitive(out)
    assert all(n.primitive for n in subformulas(prim) if isinstance(n, Inc))
    assert same(phi, prim)


SOURCES = {
    "inc-to-primitive": "inc",
    "anon-to-vor": "anon",
    "neq-split": "anon",
    "vor-to-might": "vor",
    "might-to-vor": "might",
    "or-via-gor": "union-closed",
    "gor-via-wneg": "full",
    "neq-via-wneg": "neq",
    "psi-to-inc": "union-closed",
    "psi-to-neq": "union-closed",
}


@pytest.mark.parametrize("rule", REWRITES)
def test_rewrites_preserve_semantics(rule):
    checked = 0
    for phi in random_formulas(SOURCES[rule], 60, seed=11, variables=PQR, depth=3):
        if rule == "gor-via-wneg" and not all(
            models(g.left, PQR)[0] and models(g.right, PQR)[0]
            for g in subformulas(phi) if isinstance(g, GOr)
        ):
            continue
        try:
            out = translate(phi, rule)
        except OutsideFragment:
            continue
        assert same(phi, out), (rule, str(phi), str(out))
        checked += 1
    assert checked >= 5


def test_psi_lowerings_match_psi():
    for m in range(16):
        X = Team(("p", "q"), m)
        for target in ("inc", "neq"):
            assert same(psi_lower(X, target), build_psi(X), ("p", "q"))
