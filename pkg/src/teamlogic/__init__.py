"""Propositional union-closed team logics: semantics, normal forms, entailment,
interpolation and natural deduction checking."""

from .config import DEFAULT_CAPS, CapExceeded, Caps
from .decide import EntailmentQuery, Verdict, entails, entails_bruteforce, entails_nf, equivalent
from .formula import Formula, ParseError, as_formula, classify, parse, render
from .interpolate import search_interpolant_space, uniform_interpolant, verify_interpolant
from .normalform import NormalForm, build_psi, build_psi_neq, build_theta_phi, dnf
from .semantics import EvalMode, check_locality, check_property, eval, models
from .team import Team, TeamProperty, amalgamate, load_team, parse_team, restrict
from .translate import REWRITES, translate

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_CAPS",
    "CapExceeded",
    "Caps",
    "EntailmentQuery",
    "Verdict",
    "entails",
    "entails_bruteforce",
    "entails_nf",
    "equivalent",
    "Formula",
    "ParseError",
    "as_formula",
    "classify",
    "parse",
    "render",
    "search_interpolant_space",
    "uniform_interpolant",
    "verify_interpolant",
    "NormalForm",
    "build_psi",
    "build_psi_neq",
    "build_theta_phi",
    "dnf",
    "EvalMode",
    "check_locality",
    "check_property",
    "eval",
    "models",
    "Team",
    "TeamProperty",
    "amalgamate",
    "load_team",
    "parse_team",
    "restrict",
    "REWRITES",
    "translate",
]
