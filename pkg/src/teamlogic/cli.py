"""Command line interface: ``teamlogic <command> ...``.

Exit codes: 0 when the verdict is true (or the derivation is accepted), 1
when it is false (or rejected), 2 on usage, parse or format errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from importlib import resources
from typing import Sequence

from .config import DEFAULT_CAPS, CapExceeded, Caps
from .decide import EntailmentQuery, Verdict, entails_bruteforce, equivalent
from .formula import Formula, ParseError, as_formula, render, sorted_vars
from .interpolate import (
    PreconditionFailed, VariableConditionError, interpolant_sides, search_interpolant_space,
    uniform_interpolant, verify_interpolant,
)
from .normalform import NotInFragment, build_psi, dnf
from .semantics import PROPERTY_KINDS, EvalMode, UnboundVariable, check_locality, check_property, eval
from .team import Team, format_team, load_team, parse_team, restrict
from .translate import REWRITES, OutsideFragment, translate

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _data(name: str) -> Team:
    return parse_team(resources.files("teamlogic").joinpath("data", name).read_text())


def _domain(text: str | None) -> tuple[str, ...] | None:
    if text is None:
        return None
    return tuple(v for v in text.replace(",", " ").split() if v)


def _caps(args) -> Caps:
    n = args.max_vars
    return dataclasses.replace(DEFAULT_CAPS, eval_vars=n, exhaustive_vars=n)


def _formulas(args) -> list[Formula]:
    out = [as_formula(f) for f in (args.formula or [])]
    if args.formula_file:
        with open(args.formula_file) as fh:
            text = " ".join(ln.split("#", 1)[0] for ln in fh)
        out.append(as_formula(text.strip()))
    return out


def _one_formula(args) -> Formula:
    fs = _formulas(args)
    if len(fs) != 1:
        raise UsageError("give exactly one formula with --formula or --formula-file")
    return fs[0]


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(text)


def _team_text(X: Team | None) -> str | None:
    return format_team(X) if X is not None else None


def _verdict_payload(v: Verdict) -> dict:
    return {"holds": v.holds, "counterexample": _team_text(v.counterexample),
            "restricted": v.restricted, "reverified": v.reverified, "note": v.note,
            **({"direction": v.details["direction"]} if "direction" in v.details else {})}


def _verdict_text(v: Verdict) -> str:
    lines = ["true" if v.holds else "false"]
    if v.counterexample is not None:
        lines.append("counterexample:")
        lines.append(format_team(v.counterexample).rstrip("\n"))
    if v.note:
        lines.append(f"note: {v.note}")
    return "\n".join(lines)


# ---------------------------------------------------------------- commands

def cmd_eval(args) -> int:
    phi = _one_formula(args)
    if not args.team:
        raise UsageError("eval needs --team")
    X = load_team(args.team)
    holds = eval(phi, X, args.mode, _caps(args))
    _emit(args, {"formula": render(phi), "mode": args.mode, "holds": holds,
                 "team": format_team(X)}, "true" if holds else "false")
    return EXIT_TRUE if holds else EXIT_FALSE


def cmd_check(args) -> int:
    phi = _one_formula(args)
    N = _domain(args.domain) or sorted_vars(phi)
    caps = _caps(args)
    if args.property.startswith("locality-"):
        pad = _domain(args.pad) or ()
        report = check_locality(phi, N, pad, args.mode, args.property.split("-", 1)[1], caps)
    else:
        report = check_property(phi, N, args.property, args.mode, caps)
    payload = {"kind": report.kind, "holds": report.holds, "exhaustive": report.exhaustive,
               "counterexample": [format_team(t) for t in report.counterexample or ()]}
    text = report.describe() if not report.counterexample else "\n".join(
        [f"{report.kind}: fails"] + [format_team(t).rstrip("\n") + "\n" for t in report.counterexample])
    _emit(args, payload, text.rstrip("\n"))
    return EXIT_TRUE if report.holds else EXIT_FALSE


def cmd_dnf(args) -> int:
    phi = _one_formula(args)
    nf = dnf(phi, args.target, args.method, _domain(args.domain), _caps(args))
    f = nf.formula()
    _emit(args, {"formula": render(f), "domain": list(nf.domain),
                 "disjuncts": [format_team(X) for X in nf.disjuncts]},
          f"{render(f)}\n{nf.describe()}")
    return EXIT_TRUE


def cmd_translate(args) -> int:
    phi = _one_formula(args)
    out = translate(phi, args.rule, _caps(args))
    _emit(args, {"rule": args.rule, "input": render(phi), "output": render(out)}, render(out))
    return EXIT_TRUE


def cmd_entails(args) -> int:
    premises = [as_formula(p) for p in args.premise or []]
    conclusion = _one_formula(args)
    q = EntailmentQuery(tuple(premises), conclusion, _domain(args.domain), args.mode)
    v = entails_bruteforce(q, filter=args.filter, max_team_size=args.max_team_size, caps=_caps(args))
    _emit(args, _verdict_payload(v), _verdict_text(v))
    return EXIT_TRUE if v.holds else EXIT_FALSE


def cmd_equiv(args) -> int:
    fs = _formulas(args)
    if len(fs) != 2:
        raise UsageError("equiv needs two formulas (-f A -f B)")
    v = equivalent(fs[0], fs[1], _domain(args.domain), args.mode, _caps(args))
    _emit(args, _verdict_payload(v), _verdict_text(v))
    return EXIT_TRUE if v.holds else EXIT_FALSE


def cmd_interpolate(args) -> int:
    phi = _one_formula(args)
    vocab = _domain(args.vocab) or ()
    res = uniform_interpolant(phi, vocab, caps=_caps(args))
    payload = {"interpolant": render(res.interpolant), "fragment": res.fragment_used,
               "vocabulary": list(vocab)}
    text = render(res.interpolant)
    status = EXIT_TRUE
    if args.check:
        report = verify_interpolant(phi, res.interpolant, args.check, vocab, _caps(args))
        payload["verified"] = report.ok
        text += f"\nverified against {len(args.check)} formula(s): {'ok' if report.ok else 'FAILED'}"
        status = EXIT_TRUE if report.ok else EXIT_FALSE
    _emit(args, payload, text)
    return status


def cmd_prove_check(args) -> int:
    from .proofcheck import DerivationError, check_derivation, load_derivation

    d = load_derivation(args.file)
    try:
        j = check_derivation(d)
    except DerivationError as exc:
        _emit(args, {"accepted": False, "error": exc.kind, "path": list(exc.path),
                     "detail": exc.detail}, f"rejected: {exc}")
        return EXIT_FALSE
    _emit(args, {"accepted": True, "undischarged": sorted(render(f) for f in j.undischarged),
                 "conclusion": render(j.conclusion)}, f"accepted: {j.describe()}")
    return EXIT_TRUE


# ------------------------------------------------------------------- demos

LOCALITY_CASES = [
    ("(p vor q) | (q vor r)", "example_x.team", ("p", "q", "r")),
    ("(!p & ne(q)) | (ne(q) & !r)", "example_x.team", ("p", "q", "r")),
    ("inc(p q ; r s) | inc(t u ; r s)", "example_y.team", ("p", "q", "r", "s", "t", "u")),
]


def demo_locality(args) -> int:
    teams = {}
    lines = []
    rows = []
    for text, name, keep in LOCALITY_CASES:
        if name not in teams:
            X = _data(name)
            teams[name] = X
            lines.append(f"{name} ({len(X)} rows)")
            lines.append(format_team(X).rstrip("\n"))
            lines.append(f"restricted to {' '.join(keep)}:")
            lines.append(format_team(restrict(X, keep)).rstrip("\n"))
            lines.append("")
        X = teams[name]
        R = restrict(X, keep)
        cells = {f"{m}/{tag}": eval(text, T, m) for m in ("strict", "lax") for tag, T in (("full", X), ("restricted", R))}
        rows.append((text, name, cells))
    width = max(len(t) for t, _, _ in rows)
    cols = ["strict/full", "strict/restricted", "lax/full", "lax/restricted"]
    lines.append(f"{'formula':<{width}}  " + "  ".join(cols))
    for text, _, cells in rows:
        lines.append((f"{text:<{width}}  " + "  ".join(f"{str(cells[c]).lower():<{len(c)}}" for c in cols)).rstrip())
    expected = all(c["strict/full"] and not c["strict/restricted"] and c["lax/full"] and c["lax/restricted"]
                   for _, _, c in rows)
    payload = {"rows": [{"formula": t, "team": n, **c} for t, n, c in rows], "reproduced": expected}
    _emit(args, payload, "\n".join(lines))
    return EXIT_TRUE if expected else EXIT_FALSE


def demo_interpolation_failure(args) -> int:
    domain = ("p", "q", "r", "s")
    Xr = _data("example_x_restricted.team")
    psi_x = build_psi(Xr)
    phi = as_formula(f"({render(psi_x)}) & ((p vor q) | (q vor r))")
    goal = as_formula("s vor !s")
    caps = _caps(args)
    lines = [f"premise:    {render(phi)}", f"conclusion: {render(goal)}", f"domain:     {' '.join(domain)} (strict)"]
    q = EntailmentQuery((phi,), goal, domain, EvalMode.STRICT)
    v = entails_bruteforce(q, filter=psi_x, caps=caps)
    lines.append(f"entailment over teams satisfying Psi_X': {str(v.holds).lower()}"
                 + (f" (re-verified on all teams: {str(v.reverified).lower()})" if v.reverified is not None else ""))
    sides = []
    for cand in ("T", "B", "T vor T"):
        left, right = interpolant_sides(phi, cand, goal, domain, EvalMode.STRICT, caps)
        sides.append({"candidate": cand, "premise_entails": left.holds, "entails_conclusion": right.holds,
                      "counterexample": _team_text(left.counterexample or right.counterexample)})
        failing = "premise side" if not left.holds else "conclusion side"
        cex = left.counterexample or right.counterexample
        lines.append(f"candidate {cand:<8} fails on the {failing}; counterexample {cex}")
    res = search_interpolant_space(phi, goal, (), 3, EvalMode.STRICT, domain, caps)
    lines.append(res.describe())
    ok = v.holds and res.exhausted and all(not (s["premise_entails"] and s["entails_conclusion"]) for s in sides)
    payload = {"entailment": v.holds, "reverified": v.reverified, "candidates": sides,
               "exhausted": res.exhausted, "classes": len(res.classes), "per_depth": res.per_depth}
    _emit(args, payload, "\n".join(lines))
    return EXIT_TRUE if ok else EXIT_FALSE


DEMOS = {"locality-strict": demo_locality, "interpolation-failure": demo_interpolation_failure}


def cmd_demo(args) -> int:
    return DEMOS[args.name](args)


# ------------------------------------------------------------------ parser

def _common(p: argparse.ArgumentParser, formula: bool = True) -> None:
    if formula:
        p.add_argument("-f", "--formula", action="append", help="formula text (repeatable for equiv)")
        p.add_argument("--formula-file", help="read the formula from a file")
    p.add_argument("--mode", choices=("lax", "strict"), default="lax")
    p.add_argument("--domain", help="comma separated variable list")
    p.add_argument("--max-vars", type=int, default=4, help="cap on enumerated domains")
    p.add_argument("--json", action="store_true", help="machine readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="teamlogic", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate a formula on a team file")
    _common(p)
    p.add_argument("--team", help="team file")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("check", help="closure, flatness or locality check")
    _common(p)
    p.add_argument("--property", default="union-closed",
                   choices=PROPERTY_KINDS + ("locality-up", "locality-down", "locality-both"))
    p.add_argument("--pad", help="extra variables for locality checks")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("dnf", help="disjunctive normal form")
    _common(p)
    p.add_argument("--target", choices=("vor", "inc", "neq"), default="vor")
    p.add_argument("--method", choices=("semantic", "syntactic"), default="semantic")
    p.set_defaults(run=cmd_dnf)

    p = sub.add_parser("translate", help="apply a rewrite")
    _common(p)
    p.add_argument("--rule", choices=REWRITES, required=True)
    p.set_defaults(run=cmd_translate)

    p = sub.add_parser("entails", help="brute-force entailment; -f gives the conclusion")
    _common(p)
    p.add_argument("--premise", action="append", help="premise formula (repeatable)")
    p.add_argument("--filter", help="only check teams satisfying this formula")
    p.add_argument("--max-team-size", type=int)
    p.set_defaults(run=cmd_entails)

    p = sub.add_parser("equiv", help="equivalence of two formulas")
    _common(p)
    p.set_defaults(run=cmd_equiv)

    p = sub.add_parser("interpolate", help="uniform interpolant over a vocabulary")
    _common(p)
    p.add_argument("--vocab", help="comma separated target vocabulary")
    p.add_argument("--check", action="append", help="consequence to verify the interpolant against")
    p.set_defaults(run=cmd_interpolate)

    p = sub.add_parser("prove-check", help="check a derivation file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_prove_check)

    p = sub.add_parser("demo", help="replay a worked example")
    p.add_argument("name", choices=tuple(DEMOS))
    _common(p, formula=False)
    p.set_defaults(run=cmd_demo)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_TRUE
    from .proofcheck import DerivationFormatError

    try:
        return args.run(args)
    except (UsageError, ParseError, UnboundVariable, NotInFragment, OutsideFragment, CapExceeded,
            VariableConditionError, PreconditionFailed, DerivationFormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
