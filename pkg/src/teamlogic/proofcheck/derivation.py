"""Derivation trees, judgements, checker errors and the JSON file format.

A file holds one tree. Inner nodes are
``{"rule": name, "conclusion": formula, "premises": [...], "discharge": [[labels], ...]}``
and leaves are ``{"assume": label, "formula": formula}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Union

from ..formula import Formula, ParseError, as_formula, is_identifier, render


@dataclass(frozen=True)
class Assumption:
    label: str
    formula: Formula

    def __post_init__(self):
        object.__setattr__(self, "formula", as_formula(self.formula))


@dataclass(frozen=True)
class Node:
    rule: str
    premises: tuple["Derivation", ...]
    conclusion: Formula
    discharges: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "conclusion", as_formula(self.conclusion))
        object.__setattr__(self, "premises", tuple(self.premises))
        dis = tuple(tuple(d) for d in self.discharges)
        # pad so that omitted and explicitly empty discharge lists compare equal
        dis += ((),) * (len(self.premises) - len(dis))
        object.__setattr__(self, "discharges", dis)

    def discharged_at(self, slot: int) -> tuple[str, ...]:
        return self.discharges[slot] if slot < len(self.discharges) else ()


Derivation = Union[Assumption, Node]


@dataclass(frozen=True)
class Judgement:
    undischarged: frozenset
    conclusion: Formula

    def describe(self) -> str:
        gamma = ", ".join(sorted(render(f) for f in self.undischarged))
        return f"{gamma} |- {render(self.conclusion)}" if gamma else f"|- {render(self.conclusion)}"


def judgement(premises, conclusion) -> Judgement:
    return Judgement(frozenset(as_formula(p) for p in premises), as_formula(conclusion))


# ------------------------------------------------------------------ errors

class DerivationError(Exception):
    """A rejected derivation. ``path`` lists premise indices from the root."""

    kind = "derivation-error"

    def __init__(self, detail: str, path: tuple[int, ...] = (), rule: str | None = None):
        self.detail = detail
        self.path = tuple(path)
        self.rule = rule
        where = "/".join(map(str, self.path)) or "root"
        tag = f" [{rule}]" if rule else ""
        super().__init__(f"{self.kind} at {where}{tag}: {detail}")


class SchemaMismatch(DerivationError):
    kind = "schema-mismatch"


class SideConditionViolation(DerivationError):
    kind = "side-condition"


class DischargeError(DerivationError):
    kind = "discharge"


class PrimitiveAtomRequired(DerivationError):
    kind = "primitive-atom-required"


class DerivationFormatError(ValueError):
    def __init__(self, detail: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {detail}")


# ---------------------------------------------------------------------- IO

def to_json(d: Derivation) -> dict:
    if isinstance(d, Assumption):
        return {"assume": d.label, "formula": render(d.formula)}
    out = {"rule": d.rule, "conclusion": render(d.conclusion),
           "premises": [to_json(p) for p in d.premises]}
    if d.premises:
        out["discharge"] = [list(d.discharged_at(i)) for i in range(len(d.premises))]
    return out


def _formula_at(obj: dict, key: str, path: str) -> Formula:
    text = obj.get(key)
    if not isinstance(text, str):
        raise DerivationFormatError(f"{key!r} must be a formula string", path)
    try:
        return as_formula(text)
    except (ParseError, ValueError) as exc:
        raise DerivationFormatError(f"bad formula {text!r}: {exc}", f"{path}.{key}") from None


def from_json(obj, path: str = "$") -> Derivation:
    if not isinstance(obj, dict):
        raise DerivationFormatError("expected an object", path)
    if "assume" in obj:
        extra = set(obj) - {"assume", "formula"}
        if extra:
            raise DerivationFormatError(f"unexpected keys {sorted(extra)}", path)
        label = obj["assume"]
        if not isinstance(label, str) or not is_identifier(label):
            raise DerivationFormatError(f"bad assumption label {label!r}", path)
        return Assumption(label, _formula_at(obj, "formula", path))
    if "rule" not in obj:
        raise DerivationFormatError("node needs 'rule' or 'assume'", path)
    extra = set(obj) - {"rule", "conclusion", "premises", "discharge"}
    if extra:
        raise DerivationFormatError(f"unexpected keys {sorted(extra)}", path)
    if not isinstance(obj["rule"], str):
        raise DerivationFormatError("'rule' must be a string", path)
    prem = obj.get("premises", [])
    if not isinstance(prem, list):
        raise DerivationFormatError("'premises' must be a list", path)
    subs = tuple(from_json(p, f"{path}.premises[{i}]") for i, p in enumerate(prem))
    dis = obj.get("discharge", [])
    if not (isinstance(dis, list) and all(isinstance(x, list) and all(isinstance(s, str) for s in x)
                                          for x in dis)):
        raise DerivationFormatError("'discharge' must be a list of label lists", path)
    return Node(obj["rule"], subs, _formula_at(obj, "conclusion", path), tuple(tuple(x) for x in dis))


def loads_derivation(text: str) -> Derivation:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DerivationFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    return from_json(obj)


def load_derivation(file) -> Derivation:
    if hasattr(file, "read"):
        return loads_derivation(file.read())
    return loads_derivation(Path(file).read_text())


def dumps_derivation(d: Derivation) -> str:
    return json.dumps(to_json(d), indent=1, ensure_ascii=False) + "\n"


def dump_derivation(d: Derivation, path) -> None:
    Path(path).write_text(dumps_derivation(d))


def size(d: Derivation) -> int:
    return 1 if isinstance(d, Assumption) else 1 + sum(size(p) for p in d.premises)


def rules_used(d: Derivation) -> set[str]:
    if isinstance(d, Assumption):
        return set()
    out = {d.rule}
    for p in d.premises:
        out |= rules_used(p)
    return out

