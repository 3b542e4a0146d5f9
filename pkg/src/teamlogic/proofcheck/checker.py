"""Checking derivations: schemas, discharges and classical-only side conditions."""

from __future__ import annotations

from ..formula import Formula, is_classical, render
from .derivation import (
    Assumption, Derivation, DischargeError, Judgement, Node, PrimitiveAtomRequired,
    SchemaMismatch, SideConditionViolation,
)
from .rules import RULES, Mismatch, NotPrimitive

Open = dict[str, Formula]


def _merge(into: Open, more: Open, path) -> None:
    for label, f in more.items():
        old = into.get(label)
        if old is not None and old != f:
            raise DischargeError(
                f"label {label!r} names both {render(old)} and {render(f)}", path)
        into[label] = f


def _check(d: Derivation, path: tuple[int, ...]) -> tuple[Open, Formula]:
    if isinstance(d, Assumption):
        return {d.label: d.formula}, d.formula
    if not isinstance(d, Node):
        raise TypeError(f"not a derivation: {d!r}")
    rule = RULES.get(d.rule)
    if rule is None:
        raise SchemaMismatch(f"unknown rule {d.rule!r}", path, d.rule)
    n = len(d.premises)
    if rule.arity is None:
        if n < rule.min_arity:
            raise SchemaMismatch(f"needs at least {rule.min_arity} premises, got {n}", path, d.rule)
    elif n != rule.arity:
        raise SchemaMismatch(f"needs {rule.arity} premises, got {n}", path, d.rule)
    if len(d.discharges) > n:
        raise DischargeError(f"{len(d.discharges)} discharge lists for {n} premises", path, d.rule)

    results = [_check(p, path + (i,)) for i, p in enumerate(d.premises)]
    concls = [c for _, c in results]
    try:
        shapes = rule.schema(concls, d.conclusion)
    except Mismatch as exc:
        raise SchemaMismatch(str(exc), path, d.rule) from None
    except NotPrimitive as exc:
        raise PrimitiveAtomRequired(str(exc), path, d.rule) from None

    out: Open = {}
    for slot, (opened, _) in enumerate(results):
        labels = d.discharged_at(slot)
        allowed = shapes[slot] if slot < len(shapes) else ()
        if labels and not allowed:
            raise DischargeError(f"premise {slot} discharges nothing", path, d.rule)
        for label in labels:
            if label in opened and opened[label] not in allowed:
                want = " or ".join(render(f) for f in allowed)
                raise DischargeError(
                    f"label {label!r} is {render(opened[label])}, premise {slot} discharges {want}",
                    path, d.rule)
        rest = {k: f for k, f in opened.items() if k not in labels}
        if slot in rule.classical_slots:
            for label, f in rest.items():
                if not is_classical(f):
                    raise SideConditionViolation(
                        f"premise {slot} depends on non-classical {label}: {render(f)}", path, d.rule)
        _merge(out, rest, path)
    return out, d.conclusion


def check_derivation(d: Derivation) -> Judgement:
    """Verify every node of ``d``; return its undischarged assumptions and conclusion."""
    opened, concl = _check(d, ())
    return Judgement(frozenset(opened.values()), concl)


def open_assumptions(d: Derivation) -> dict[str, Formula]:
    """Labels left undischarged by ``d`` (checks the derivation on the way)."""
    return dict(_check(d, ())[0])
