"""Natural deduction derivations for the union-closed team logics."""

from .checker import check_derivation, open_assumptions
from .derivation import (
    Assumption, Derivation, DerivationError, DerivationFormatError, DischargeError,
    Judgement, Node, PrimitiveAtomRequired, SchemaMismatch, SideConditionViolation,
    dump_derivation, dumps_derivation, from_json, judgement, load_derivation,
    loads_derivation, to_json,
)
from .fixtures import Fixture, builtin_fixtures, export_fixtures, fixture
from .rules import RULE_NAMES, RULES

__all__ = [
    "check_derivation",
    "open_assumptions",
    "Assumption",
    "Derivation",
    "DerivationError",
    "DerivationFormatError",
    "DischargeError",
    "Judgement",
    "Node",
    "PrimitiveAtomRequired",
    "SchemaMismatch",
    "SideConditionViolation",
    "dump_derivation",
    "dumps_derivation",
    "from_json",
    "judgement",
    "load_derivation",
    "loads_derivation",
    "to_json",
    "Fixture",
    "builtin_fixtures",
    "export_fixtures",
    "fixture",
    "RULE_NAMES",
    "RULES",
]
