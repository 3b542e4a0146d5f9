from itertools import product
from importlib import resources

import numpy as np
import pytest
from hypothesis import given, strategies as st

from teamlogic.normalform import build_psi
from teamlogic.semantics import eval as sat
from teamlogic.team import (
    AmalgamationError, Team, TeamProperty, Valuation, amalgamate, code_of, enumerate_teams,
    format_team, load_team, parse_team, restrict,
)

from strategies import teams

X_ROWS = ["1000", "0100", "0101", "0010"]
PQRS = ("p", "q", "r", "s")


def test_row_encoding():
    X = Team.from_rows(("p", "q"), ["10"])
    assert X.codes == [1]
    v = next(iter(X))
    assert v["p"] == 1 and v["q"] == 0
    assert str(X) == "{10}"


def test_restrict_example_team():
    X = Team.from_rows(PQRS, X_ROWS)
    assert sorted(restrict(X, ("p", "q", "r")).rows()) == ["001", "010", "100"]


def test_restrict_trivial_cases():
    X = Team.from_rows(PQRS, X_ROWS)
    assert restrict(X, PQRS) == X
    assert restrict(Team(PQRS, 0), ("p",)) == Team(("p",), 0)
    with pytest.raises(ValueError):
        restrict(Team(("p",), 1), ("q",))


def test_amalgamate_disjoint_domains():
    Z = amalgamate(Team.from_rows(("p",), ["1"]), Team.from_rows(("q",), ["0"]))
    assert Z.domain == ("p", "q") and Z.rows() == ["10"]


def brute_amalgam(X, Y):
    dom = X.domain + tuple(v for v in Y.domain if v not in X.domain)
    rows = []
    for bits in product("01", repeat=len(dom)):
        val = dict(zip(dom, bits))
        if "".join(val[v] for v in X.domain) in X.rows() and "".join(val[v] for v in Y.domain) in Y.rows():
            rows.append("".join(bits))
    return Team.from_rows(dom, rows)


def test_amalgamate_shared_variable():
    X = Team.from_rows(("p", "q"), ["10", "01"])
    Y = Team.from_rows(("q", "r"), ["00", "11"])
    Z = amalgamate(X, Y)
    assert sorted(Z.rows()) == ["011", "100"]
    assert Z == brute_amalgam(X, Y)


def test_amalgamate_idempotent_and_mismatch():
    X = Team.from_rows(("p", "q"), ["10", "01"])
    assert amalgamate(X, X) == X
    with pytest.raises(AmalgamationError):
        amalgamate(X, Team.from_rows(("q", "r"), ["00"]))


@given(teams(("p", "q")), teams(("q", "r")))
def test_amalgam_projects_back(X, Y):
    if restrict(X, ("q",)) != restrict(Y, ("q",)):
        return
    Z = amalgamate(X, Y)
    assert restrict(Z, ("p", "q")) == X
    assert restrict(Z, ("q", "r")) == Y
    assert Z == brute_amalgam(X, Y)


def test_enumerate_counts():
    assert [t.mask for t in enumerate_teams(("p",))] == [0, 1, 2, 3]
    assert len(list(enumerate_teams(("p", "q")))) == 16
    assert len(list(enumerate_teams(("p", "q"), max_size=1))) == 5


def test_enumerate_with_psi_filter():
    Xr = Team.from_rows(("p", "q", "r"), ["100", "010", "001"])
    found = {t.mask for t in enumerate_teams(PQRS, filter=build_psi(Xr))}
    expected = {t.mask for t in enumerate_teams(PQRS) if t.mask == 0 or restrict(t, ("p", "q", "r")) == Xr}
    assert found == expected
    assert all(sat(build_psi(Xr), Team(PQRS, m)) for m in found)


def test_team_file_round_trip(tmp_path):
    X = Team.from_rows(PQRS, X_ROWS)
    text = format_team(X)
    assert parse_team(text) == X
    path = tmp_path / "x.team"
    path.write_text("# comment\n" + text + "\n")
    assert load_team(path) == X


@pytest.mark.parametrize("text", ["", "p p\n1 1", "p q\n1", "p q\n12"])
def test_bad_team_files(text):
    with pytest.raises(ValueError):
        parse_team(text)


def test_shipped_team_files_match_their_restrictions():
    data = resources.files("teamlogic") / "data"
    X = parse_team((data / "example_x.team").read_text())
    Y = parse_team((data / "example_y.team").read_text())
    assert sorted(X.rows()) == sorted(X_ROWS)
    assert restrict(X, ("p", "q", "r")) == parse_team((data / "example_x_restricted.team").read_text())
    assert restrict(Y, tuple("pqrstu")) == parse_team((data / "example_y_restricted.team").read_text())
    assert len(Y) == 4 and len(restrict(Y, tuple("pqrstu"))) == 3


def test_property_projection_and_witnesses():
    prop = TeamProperty.from_masks(("p", "q"), [0, 0b0010, 0b0100])
    assert not prop.union_closed
    y, z, yz = prop.union_witness()
    assert y | z == yz and yz.mask == 0b0110
    proj = prop.project(("p",))
    assert proj.masks == [0, 1, 2]


def test_valuation_bits():
    v = Valuation(("p", "q", "r"), code_of("101"))
    assert v.bits == "101" and v["r"] == 1 and v["q"] == 0


@given(st.integers(0, 255), st.integers(0, 255))
def test_team_set_operations(a, b):
    X, Y = Team(("p", "q", "r"), a), Team(("p", "q", "r"), b)
    assert (X | Y).mask == a | b
    assert (X & Y) <= X
    assert len(X) == bin(a).count("1")
    assert np.all([c in X for c in X.codes])
