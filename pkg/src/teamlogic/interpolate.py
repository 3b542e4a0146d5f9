"""Uniform interpolants by projecting team properties, and the failure search.

Under lax semantics the logics are local, so the set of teams satisfying
``phi`` projected to a subvocabulary ``N`` is again a property of the same
kind and is defined by a normal form over ``N``. Under strict semantics the
search in :func:`search_interpolant_space` enumerates small formulas over a
vocabulary and reports when none of them interpolates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import lattice
from .config import DEFAULT_CAPS, CapExceeded, Caps
from .decide import EntailmentQuery, Verdict, entails_bruteforce
from .formula import (
    And, Atom, Bot, Formula, GOr, Neg, Or, ROr, Top, as_formula, classify, disj,
    free_vars, is_classical, signed_conj, sorted_vars,
)
from .normalform import NormalForm, canonical_basis, property_formula
from .semantics import EvalMode, GroundEvaluator, as_mode, models
from .team import Team, TeamProperty, check_domain, members_of


@dataclass
class InterpolationResult:
    interpolant: Formula
    property: TeamProperty
    fragment_used: str


class VariableConditionError(ValueError):
    pass


class PreconditionFailed(ValueError):
    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        super().__init__(f"the entailment does not hold; counterexample {verdict.counterexample}")


def uniform_interpolant(phi, N: Sequence[str], simplify_flat: bool = False,
                        caps: Caps = DEFAULT_CAPS) -> InterpolationResult:
    """A formula over ``N`` whose lax property is the projection of ``phi``'s."""
    phi = as_formula(phi)
    N = check_domain(N)
    flags, fv = classify(phi)
    if "uses-sneg" in flags:
        raise ValueError("interpolation needs the empty-team property; sneg is not supported")
    domain = tuple(sorted(fv)) + tuple(v for v in N if v not in fv)
    prop = TeamProperty(domain, models(phi, domain, caps=caps)).project(N)
    if simplify_flat and prop.flat:
        S = [c for c in range(1 << len(N)) if prop.table[1 << c]]
        rows = [signed_conj(N, [c >> i & 1 for i in range(len(N))]) for c in S]
        return InterpolationResult(disj(rows, Or), prop, "classical")
    if flags <= frozenset({"classical", "uses-ror", "uses-inc", "uses-primitive-inc-only",
                           "uses-anon", "uses-nonconst", "uses-might"}):
        nf = NormalForm(N, canonical_basis(prop.table), "vor")
        return InterpolationResult(nf.formula(), prop, "vor")
    return InterpolationResult(property_formula(prop.table, N, GOr), prop, "gor")


@dataclass
class InterpolantReport:
    phi_entails_theta: Verdict
    samples: list[tuple[Formula, bool, Verdict | None]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return bool(self.phi_entails_theta) and all(v is None or v.holds for _, _, v in self.samples)


def verify_interpolant(phi, theta, samples: Sequence, vocab: Sequence[str] | None = None,
                       caps: Caps = DEFAULT_CAPS) -> InterpolantReport:
    """Check ``phi |= theta`` and ``theta |= psi`` for each sample ``psi`` with ``phi |= psi``.

    Samples must satisfy the variable condition: the variables ``psi`` shares
    with ``phi`` lie in ``vocab`` (default: the variables of ``theta``).
    """
    phi, theta = as_formula(phi), as_formula(theta)
    vocab = set(vocab) if vocab is not None else set(free_vars(theta))
    if not free_vars(theta) <= vocab:
        raise VariableConditionError("the interpolant uses variables outside the vocabulary")
    report = InterpolantReport(entails_bruteforce(EntailmentQuery((phi,), theta), caps=caps))
    for psi in samples:
        psi = as_formula(psi)
        shared = free_vars(psi) & free_vars(phi)
        if not shared <= vocab:
            raise VariableConditionError(
                f"{psi} shares {sorted(shared - vocab)} with the premise outside the vocabulary")
        applies = entails_bruteforce(EntailmentQuery((phi,), psi), caps=caps).holds
        verdict = entails_bruteforce(EntailmentQuery((theta,), psi), caps=caps) if applies else None
        report.samples.append((psi, applies, verdict))
    return report


def interpolant_sides(phi, theta, psi, domain: Sequence[str], mode=EvalMode.STRICT,
                      caps: Caps = DEFAULT_CAPS) -> tuple[Verdict, Verdict]:
    """Verdicts for ``phi |= theta`` and ``theta |= psi`` over ``domain``."""
    left = entails_bruteforce(EntailmentQuery((phi,), theta, domain, mode), caps=caps)
    right = entails_bruteforce(EntailmentQuery((theta,), psi, domain, mode), caps=caps)
    return left, right


# ------------------------------------------------------------- the search

@dataclass
class SearchResult:
    found: Formula | None
    classes: list[Formula]
    per_depth: list[int]
    ground_teams: list[Team]

    @property
    def exhausted(self) -> bool:
        return self.found is None

    def describe(self) -> str:
        if self.found is not None:
            return f"interpolant found: {self.found}"
        counts = ", ".join(f"depth {d}: {n}" for d, n in enumerate(self.per_depth))
        return f"no interpolant; {len(self.classes)} semantic classes tried ({counts})"


def _maximal(table: np.ndarray, m: int) -> list[int]:
    """Members of the family not strictly contained in another member."""
    idx = lattice.indices(m)
    above = lattice.superset_any(table)
    strictly = np.zeros_like(table)
    for i in range(m):
        bit = 1 << i
        missing = (idx & bit) == 0
        strictly |= missing & above[idx | bit]
    return [int(x) for x in np.flatnonzero(table & ~strictly)]


def _local_mask(sub: int, ground: list[int]) -> int:
    return sum(1 << j for j, c in enumerate(ground) if sub >> c & 1)


def search_interpolant_space(phi, psi, vocab: Sequence[str] = (), depth: int = 3,
                             mode=EvalMode.STRICT, domain: Sequence[str] | None = None,
                             caps: Caps = DEFAULT_CAPS, max_classes: int = 20000) -> SearchResult:
    """Enumerate formulas over ``vocab`` built from T, B, !, &, | and vor up to ``depth``.

    Candidates are identified up to their truth values on every subteam of
    the teams that matter (teams satisfying ``phi`` and teams refuting
    ``psi``). That relation is a congruence for all connectives, because each
    clause only inspects subteams, so quotienting by it loses nothing.
    """
    phi, psi = as_formula(phi), as_formula(psi)
    mode = as_mode(mode)
    domain = check_domain(domain) if domain is not None else sorted_vars(phi, psi)
    vocab = check_domain(vocab)
    if not set(vocab) <= set(domain):
        raise ValueError("vocabulary must lie inside the domain")
    pre = entails_bruteforce(EntailmentQuery((phi,), psi, domain, mode), caps=caps)
    if not pre:
        raise PreconditionFailed(pre)

    t_phi = models(phi, domain, mode, caps)
    t_not_psi = ~models(psi, domain, mode, caps)
    m = 1 << len(domain)
    grounds = _maximal(t_phi | t_not_psi, m)
    ground_codes = [members_of(g) for g in grounds]
    evaluators = [GroundEvaluator(domain, codes, mode, caps) for codes in ground_codes]

    def locate(team: int) -> tuple[int, int]:
        for gi, g in enumerate(grounds):
            if team & ~g == 0:
                return gi, _local_mask(team, ground_codes[gi])
        raise AssertionError("team outside every ground team")

    must_hold = [locate(int(x)) for x in np.flatnonzero(t_phi)]
    must_fail = [locate(int(x)) for x in np.flatnonzero(t_not_psi)]

    def signature(f: Formula) -> bytes:
        return b"".join(np.packbits(ev.table(f)).tobytes() for ev in evaluators)

    def interpolates(f: Formula) -> bool:
        tabs = [ev.table(f) for ev in evaluators]
        return (all(tabs[g][x] for g, x in must_hold)
                and not any(tabs[g][x] for g, x in must_fail))

    seen: dict[bytes, Formula] = {}
    levels: list[list[Formula]] = []
    classes: list[Formula] = []

    def admit(f: Formula, bucket: list[Formula]) -> Formula | None:
        sig = signature(f)
        if sig in seen:
            return None
        seen[sig] = f
        bucket.append(f)
        classes.append(f)
        if len(classes) > max_classes:
            raise CapExceeded(f"more than {max_classes} semantic classes")
        return f if interpolates(f) else None

    def result(found):
        return SearchResult(found, classes, [len(lv) for lv in levels],
                            [Team(domain, g) for g in grounds])

    base: list[Formula] = []
    levels.append(base)
    for f in [Top(), Bot()] + [Atom(v) for v in vocab]:
        if admit(f, base):
            return result(f)
    for d in range(1, depth + 1):
        bucket: list[Formula] = []
        levels.append(bucket)
        newest = levels[d - 1]
        older = [f for lv in levels[: d - 1] for f in lv]
        for a in newest:
            if is_classical(a) and admit(Neg(a), bucket):
                return result(bucket[-1])
        pairs = [(a, b) for a in newest for b in newest + older] + [(b, a) for a in newest for b in older]
        for a, b in pairs:
            for op in (And, Or, ROr):
                f = op(a, b)
                if admit(f, bucket):
                    return result(f)
    return result(None)
