"""Builtin derivations: small-width instances of the derived rules and examples.

Each fixture is built by a template function; the shipped ``.deriv`` files
are dumps of the same trees.
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

from ..formula import (
    And, Bot, Formula, Inc, Neg, Or, ROr, as_formula, disj, literal,
)
from ..translate import anon_to_vor, inclusion_expansion, sign_vectors
from .derivation import (
    Assumption, Derivation, DischargeError, Judgement, Node, PrimitiveAtomRequired,
    SchemaMismatch, SideConditionViolation, dump_derivation, judgement, load_derivation,
)

FIXTURE_DIR = Path(__file__).with_name("fixtures")


class Fixture(NamedTuple):
    name: str
    derivation: Derivation
    expected: Judgement | None
    accept: bool
    error: type | None = None
    source: str = ""


def A(label: str, f) -> Assumption:
    return Assumption(label, as_formula(f))


def N(rule: str, concl, *premises: Derivation, dis=()) -> Node:
    return Node(rule, premises, as_formula(concl), tuple(tuple(x) for x in dis))


def concl(d: Derivation) -> Formula:
    return d.formula if isinstance(d, Assumption) else d.conclusion


class _Labels:
    def __init__(self):
        self.n = 0

    def __call__(self, stem: str = "h") -> str:
        self.n += 1
        return f"{stem}{self.n}"


def clash(pos: Derivation, neg: Derivation, goal=Bot()) -> Node:
    return N("NegE", goal, pos, neg)


def or_e(major: Derivation, left, right, goal) -> Node:
    """OrE where ``left`` and ``right`` map an assumption to a derivation of ``goal``."""
    d = concl(major)
    fresh = _Labels.shared
    a, b = fresh("l"), fresh("r")
    return N("OrE", goal, major, left(A(a, d.left)), right(A(b, d.right)), dis=[[], [a], [b]])


def inject(d: Derivation, items: list[Formula], k: int) -> Derivation:
    """Embed a derivation of ``items[k]`` into the left-nested disjunction of ``items``."""
    if len(items) == 1:
        return d
    target = disj(items, Or)
    if k == len(items) - 1:
        return N("OrI-R", target, d)
    return N("OrI-L", target, inject(d, items[:-1], k))


def cases(major: Derivation, items: list[Formula], each, goal) -> Derivation:
    """Case split over a left-nested disjunction; ``each(k, assumption)`` derives ``goal``."""
    if len(items) == 1:
        return each(0, major)
    d = concl(major)
    fresh = _Labels.shared
    a, b = fresh("c"), fresh("c")
    left = cases(A(a, d.left), items[:-1], each, goal)
    right = each(len(items) - 1, A(b, d.right))
    return N("OrE", goal, major, left, right, dis=[[], [a], [b]])


def bot_to_any(d: Derivation, goal) -> Node:
    """From a derivation of B, any formula, without side conditions."""
    return N("RorBotE", goal, N("RorI", "B vor B", d, d))


def bot_to_any_classical(d: Derivation, goal) -> Node:
    return N("NegE", goal, N("TopI", "T"), N("NegI", "!T", d))


# ------------------------------------------------------------- positives

def exfalso():
    return bot_to_any_classical(A("h", "B"), "p"), judgement(["B"], "p")


def bote_vor():
    h, k = A("h", "p vor q"), A("k", "!q")
    swapped = N("RorCom", "q vor p", h)
    sub = N("RorSub", "B vor p", swapped, clash(A("u", "q"), k), dis=[[], ["u"]])
    d = N("RorBotE", "r", N("RorCom", "p vor B", sub))
    return d, judgement(["p vor q", "!q"], "r")


def bote_or():
    h, k = A("h", "p | q"), A("k", "!q")
    d = N("OrE", "p", h, A("u", "p"), clash(A("v", "q"), k, "p"), dis=[[], ["u"], ["v"]])
    return d, judgement(["p | q", "!q"], "p")


def ror_elim():
    h = A("h", "p vor (p & q)")
    s1 = N("RorSub", "p vor (p & q)", h, A("u", "p"), dis=[[], ["u"]])
    s2 = N("RorSub", "p vor p", N("RorCom", "(p & q) vor p", s1),
           N("AndE-L", "p", A("w", "p & q")), dis=[[], ["w"]])
    d = N("OrE", "p", N("RorOrTr", "p | p", s2), A("a", "p"), A("b", "p"), dis=[[], ["a"], ["b"]])
    return d, judgement(["p vor (p & q)"], "p")


def ror_idem():
    h = A("h", "p vor p")
    s1 = N("RorSub", "p vor p", h, A("u", "p"), dis=[[], ["u"]])
    s2 = N("RorSub", "p vor p", N("RorCom", "p vor p", s1), A("w", "p"), dis=[[], ["w"]])
    d = N("OrE", "p", N("RorOrTr", "p | p", s2), A("a", "p"), A("b", "p"), dis=[[], ["a"], ["b"]])
    return d, judgement(["p vor p"], "p")


def ror_intro():
    h = A("h", "p")
    return N("RorI", "p vor p", h, h), judgement(["p"], "p vor p")


def dstr():
    h = A("h", "p vor (q | r)")
    return N("DstrRorOr", "(p vor q) | (p vor r)", h), judgement(["p vor (q | r)"], "(p vor q) | (p vor r)")


def dstr_converse():
    goal = "p vor (q | r)"

    def side(a: Assumption, lit: str, rule: str) -> Node:
        com = N("RorCom", f"{lit} vor p", a)
        sub = N("RorSub", "(q | r) vor p", com, N(rule, "q | r", A("w" + lit, lit)), dis=[[], ["w" + lit]])
        return N("RorCom", goal, sub)

    h = A("h", "(p vor q) | (p vor r)")
    d = N("OrE", goal, h, side(A("a", "p vor q"), "q", "OrI-L"), side(A("b", "p vor r"), "r", "OrI-R"),
          dis=[[], ["a"], ["b"]])
    return d, judgement(["(p vor q) | (p vor r)"], goal)


def inc_id():
    return N("IncId", "inc(p q ; p q)"), judgement([], "inc(p q ; p q)")


def ince_1():
    d = clash(N("TopI", "T"), N("IncCmp", "!T", A("h", "inc(T ; p)"), A("k", "!p")))
    return d, judgement(["!p", "inc(T ; p)"], "B")


def _single_inc(lit: Derivation, var: str, sign: str) -> Node:
    """``p^x |- x <= p`` from IncId, one extension and a contraction."""
    rule = "Inc0Ext-pT" if sign == "T" else "Inc0Ext-pB"
    ext = N(rule, f"inc({sign} T ; {var} T)", lit, N("IncId", "inc(T ; T)"))
    return N("IncCtr", f"inc({sign} ; {var})", ext)


def winci_2():
    first = _single_inc(A("h", "p1"), "p1", "T")
    second = N("Inc0Ext-pB", "inc(B T ; p2 p1)", A("k", "!p2"), first)
    d = N("IncExc", "inc(T B ; p1 p2)", second)
    return d, judgement(["p1", "!p2"], "inc(T B ; p1 p2)")


def _excluded_middle(var: str) -> Node:
    em = f"{var} | !{var}"
    h = A("n", f"!({em})")
    left = N("NegI", f"!{var}", clash(N("OrI-L", em, A("u", var)), h), dis=[["u"]])
    return N("RAA", em, clash(N("OrI-R", em, left), h), dis=[["n"]])


def allposs_1():
    goal = "(p & inc(T ; p)) | (!p & inc(B ; p))"
    pos = N("OrI-L", goal, N("AndI", "p & inc(T ; p)", A("a", "p"), _single_inc(A("a", "p"), "p", "T")))
    neg = N("OrI-R", goal, N("AndI", "!p & inc(B ; p)", A("b", "!p"), _single_inc(A("b", "!p"), "p", "B")))
    d = N("OrE", goal, _excluded_middle("p"), pos, neg, dis=[[], ["a"], ["b"]])
    return d, judgement([], goal)


def _disjuncts(f: Formula) -> list[Formula]:
    out = []
    while isinstance(f, Or):
        out.append(f.right)
        f = f.left
    out.append(f)
    return out[::-1]


def _anon(text: str) -> Formula:
    return anon_to_vor(as_formula(text))


def anon_perm_right():
    src, dst = _anon("ups(p ; s t)"), _anon("ups(p ; t s)")
    h = A("h", src)
    d = N("OrE", dst, h, N("OrI-R", dst, A("a", src.left)), N("OrI-L", dst, A("b", src.right)),
          dis=[[], ["a"], ["b"]])
    return d, Judgement(frozenset({src}), dst)


def anon_perm_left():
    src, dst = _anon("ups(p q ; s)"), _anon("ups(q p ; s)")
    items_src, items_dst = _disjuncts(src), _disjuncts(dst)
    signs = sign_vectors(2)

    def each(k, a):
        x = signs[k]
        pq = N("AndE-L", concl(a).left, a)
        qp = N("AndI", And(literal("q", x[1] == "T"), literal("p", x[0] == "T")),
               N("AndE-R", literal("q", x[1] == "T"), pq), N("AndE-L", literal("p", x[0] == "T"), pq))
        body = N("AndI", items_dst[signs.index((x[1], x[0]))], qp, N("AndE-R", concl(a).right, a))
        return inject(body, items_dst, signs.index((x[1], x[0])))

    return cases(A("h", src), items_src, each, dst), Judgement(frozenset({src}), dst)


def anon_monotonicity():
    src, dst = _anon("ups(p q ; r)"), _anon("ups(p ; r s)")
    items_src = _disjuncts(src)
    part = dst.left
    items_part = _disjuncts(part)
    signs = sign_vectors(2)

    def each(k, a):
        x = signs[k]
        j = 0 if x[0] == "T" else 1
        lit = N("AndE-L", literal("p", x[0] == "T"), N("AndE-L", concl(a).left, a))
        body = N("AndI", items_part[j], lit, N("AndE-R", concl(a).right, a))
        return N("OrI-L", dst, inject(body, items_part, j))

    return cases(A("h", src), items_src, each, dst), Judgement(frozenset({src}), dst)


def _ne_refute(a: Derivation, var: str, positive: bool) -> Node:
    """From a derivation of ``x & (var vor !var)`` where x ends in the literal, derive B."""
    lit_f = literal(var, positive)
    ne = N("AndE-R", concl(a).right, a)
    lit = N("AndE-R", lit_f, N("AndE-L", concl(a).left, a))
    # the literal is classical, but it comes from a non-classical assumption;
    # route it through OrE-Ror so the substitution premise stays classical
    fresh = _Labels.shared
    u, c, b, r = fresh("u"), fresh("c"), fresh("b"), fresh("r")
    if positive:
        com = N("RorCom", f"!{var} vor {var}", ne)
        sub = N("RorSub", f"B vor {var}", com, clash(A(c, lit_f), A(u, f"!{var}")), dis=[[], [u]])
        tail = N("RorBotE", "B", N("RorCom", f"{var} vor B", sub))
    else:
        sub = N("RorSub", f"B vor !{var}", ne, clash(A(u, var), A(c, lit_f)), dis=[[], [u]])
        tail = N("RorBotE", "B", N("RorCom", f"!{var} vor B", sub))
    return N("OrE-Ror", "B", N("OrI-L", Or(lit_f, Bot()), lit), tail, A(b, "B"),
             N("RorBotE", "B", A(r, ROr(lit_f, Bot()))), dis=[[], [c], [b], [r]])


def anon_weakening():
    src, dst = _anon("ups(p q ; r q)"), _anon("ups(p q ; r)")
    bad = src.right
    items_bad = _disjuncts(bad)
    signs = sign_vectors(2)

    def each(k, a):
        return _ne_refute(a, "q", signs[k][1] == "T")

    refuted = cases(A("z", bad), items_bad, each, "B")
    d = N("OrE", dst, A("h", src), A("y", dst), bot_to_any(refuted, dst), dis=[[], ["y"], ["z"]])
    return d, Judgement(frozenset({src}), dst)


def anon_empty():
    f = _anon("ups(p ; )")
    return A("h", f), Judgement(frozenset({f}), Bot())


IFF = "(!a | b) & (!b | a)"


def _neg_transfer(impl: Derivation, known: Derivation, goal_sub: str, fresh) -> Node:
    """From ``known`` and ``impl`` = ``P | Q``, derive ``!goal_sub`` when each
    disjunct clashes with ``known`` or with ``goal_sub``."""
    w = fresh("w")
    goal = A(w, goal_sub)

    def refute(x: Derivation) -> Node:
        fx = concl(x)
        for other in (known, goal):
            fo = concl(other)
            if fo == Neg(fx):
                return clash(x, other)
            if isinstance(fx, Neg) and fx.sub == fo:
                return clash(other, x)
        raise ValueError(f"nothing clashes with {fx}")

    body = or_e(impl, refute, refute, Bot())
    return N("NegI", Neg(as_formula(goal_sub)), body, dis=[[w]])


def _replace_step(atom_rdt: Derivation, src: str, dst: str, x: str, iff: Assumption,
                  fresh) -> Node:
    """From ``src^x -> x <= e`` derive ``dst^x -> x <= e`` using ``src <-> dst``."""
    f = concl(atom_rdt)
    tail = f.right
    goal = Or(Neg(literal(dst, x == "T")), tail)
    u, v = fresh("u"), fresh("v")
    if x == "T":
        # !src, (dst -> src) |- !dst
        impl = N("AndE-R" if src == "a" else "AndE-L", "!b | a" if src == "a" else "!a | b", iff)
        neg = _neg_transfer(impl, A(u, f"!{src}"), dst, fresh)
    else:
        # !!src, (src -> dst) |- !!dst
        impl = N("AndE-L" if src == "a" else "AndE-R", "!a | b" if src == "a" else "!b | a", iff)
        neg = _neg_transfer(impl, A(u, f"!!{src}"), f"!{dst}", fresh)
    left = N("OrI-L", goal, neg)
    right = N("OrI-R", goal, A(v, tail))
    return N("OrE", goal, atom_rdt, left, right, dis=[[], [u], [v]])


def _replace_lhs(atom: Derivation, src: str, dst: str, iff: Assumption) -> Node:
    fresh = _Labels.shared
    inc = concl(atom)
    target = Inc((dst,), inc.rhs)
    steps = []
    for (x,) in sign_vectors(1):
        rdt = N("IncRdt", Or(Neg(literal(src, x == "T")), Inc((x,), inc.rhs)), atom)
        steps.append(_replace_step(rdt, src, dst, x, iff, fresh))
    both = N("AndI", inclusion_expansion(target), *steps)
    return N("IncExt", target, both)


def repl_inc():
    iff = A("e", IFF)
    d = _replace_lhs(A("h", "inc(a ; d)"), "a", "b", iff)
    return d, judgement([IFF, "inc(a ; d)"], "inc(b ; d)")


def repl_inc_right():
    iff = A("e", IFF)
    swapped = _replace_lhs(N("IncId", "inc(b ; b)"), "b", "a", iff)
    d = N("IncTrs", "inc(d ; b)", A("h", "inc(d ; a)"), swapped)
    return d, judgement([IFF, "inc(d ; a)"], "inc(d ; b)")


def inc_roundtrip():
    h = A("h", "inc(p ; q)")
    expansion = inclusion_expansion(concl(h))
    parts = [N("IncRdt", f, h) for f in (expansion.left, expansion.right)]
    d = N("IncExt", "inc(p ; q)", N("AndI", expansion, *parts))
    return d, judgement(["inc(p ; q)"], "inc(p ; q)")


def inc_wk_ctr():
    h = A("h", "inc(p q ; r s)")
    wk = N("IncWk", "inc(p p q ; r r s)", h)
    d = N("IncCtr", "inc(p p ; r r)", wk)
    return d, judgement(["inc(p q ; r s)"], "inc(p p ; r r)")


def inc0_dst():
    d = N("Inc0Dst", "((p | r) & inc(T ; r)) | q", A("h", "p | q"), A("k", "inc(T ; r)"))
    return d, judgement(["p | q", "inc(T ; r)"], "((p | r) & inc(T ; r)) | q")


def or_inc0_e():
    goal = "p | q"
    d = N("OrInc0E", goal, A("h", "(p & inc(T ; r)) | q"),
          N("OrI-L", goal, A("a", "p")), N("OrI-R", goal, A("b", "q")), A("c", goal),
          dis=[[], ["a", "i"], ["b"], ["c", "j"]])
    return d, judgement(["(p & inc(T ; r)) | q"], goal)


# ------------------------------------------------------------- negatives

def bad_raa():
    h = A("h", "p & ne(p)")
    return N("RAA", "p", clash(N("AndE-L", "p", h), A("u", "!p")), dis=[["u"]])


def bad_rorass():
    return N("RorAss", "(q vor p) vor r", A("h", "p vor (q vor r)"))


def bad_negi():
    h = A("h", "ne(p) & !p")
    return N("NegI", "!p", clash(A("u", "p"), N("AndE-R", "!p", h)), dis=[["u"]])


def bad_ore():
    h = A("k", "ne(r)")
    return N("OrE", "ne(r)", A("h", "p | q"), h, h, dis=[[], ["a"], ["b"]])


def bad_rorsub():
    h = A("h", "p vor q")
    return N("RorSub", "ne(r) vor q", h, A("k", "ne(r)"), dis=[[], ["u"]])


def bad_discharge_shape():
    return N("OrE", "q", A("h", "p | q"), A("a", "q"), A("b", "q"), dis=[[], ["a"], ["b"]])


def bad_discharge_andi():
    return N("AndI", "p & q", A("a", "p"), A("b", "q"), dis=[["a"], []])


def bad_inc0ext():
    return N("Inc0Ext-TT", "inc(T p ; T q)", A("h", "inc(p ; q)"))


def bad_label():
    return N("AndI", "p & q", A("h", "p"), A("h", "q"))


def bad_incext_order():
    atom = as_formula("inc(p ; q)")
    exp = inclusion_expansion(atom)
    swapped = And(exp.right, exp.left)
    return N("IncExt", atom, A("h", swapped))


def bad_cmp_symbols():
    return N("IncCmp", "!T", A("h", "inc(T ; p)"), A("k", "!r"))


POSITIVE = [
    ("exfalso", exfalso, "bottom proves anything"),
    ("bote-vor", bote_vor, "vor with a refuted disjunct"),
    ("bote-or", bote_or, "lax disjunction with a refuted disjunct"),
    ("ror-elim", ror_elim, "vor elimination under classical side assumptions"),
    ("ror-idem", ror_idem, "vor idempotence, left to right"),
    ("ror-intro", ror_intro, "vor idempotence, right to left"),
    ("dstr-ror-or", dstr, "distributing vor over |"),
    ("dstr-ror-or-converse", dstr_converse, "collecting (p vor q) | (p vor r)"),
    ("inc-id", inc_id, "identity inclusion"),
    ("ince-1", ince_1, "a refuted primitive atom"),
    ("winci-2", winci_2, "literals give a primitive atom"),
    ("allposs-1", allposs_1, "every team over one variable"),
    ("anon-perm-right", anon_perm_right, "anonymity: permuting the right side"),
    ("anon-perm-left", anon_perm_left, "anonymity: permuting the left side"),
    ("anon-monotonicity", anon_monotonicity, "anonymity: monotonicity"),
    ("anon-weakening", anon_weakening, "anonymity: weakening"),
    ("anon-empty", anon_empty, "anonymity with an empty right side"),
    ("repl-inc", repl_inc, "replacing equivalents on the left of an inclusion"),
    ("repl-inc-right", repl_inc_right, "replacing equivalents on the right of an inclusion"),
    ("inc-roundtrip", inc_roundtrip, "inclusion atom to primitive atoms and back"),
    ("inc-wk-ctr", inc_wk_ctr, "weakening then contraction"),
    ("inc0-dst", inc0_dst, "distributing primitive atoms"),
    ("or-inc0-e", or_inc0_e, "disjunction elimination with a primitive atom"),
]

NEGATIVE = [
    ("bad-raa", bad_raa, SideConditionViolation, "RAA over a non-classical assumption"),
    ("bad-rorass", bad_rorass, SchemaMismatch, "RorAss transposing the wrong disjunct"),
    ("bad-negi", bad_negi, SideConditionViolation, "NegI over a non-classical assumption"),
    ("bad-ore", bad_ore, SideConditionViolation, "OrE minor premise with ne(r) open"),
    ("bad-rorsub", bad_rorsub, SideConditionViolation, "RorSub with ne(r) open"),
    ("bad-discharge-shape", bad_discharge_shape, DischargeError, "OrE discharging the wrong disjunct"),
    ("bad-discharge-andi", bad_discharge_andi, DischargeError, "AndI discharging an assumption"),
    ("bad-inc0ext", bad_inc0ext, PrimitiveAtomRequired, "Inc0Ext on a non-primitive atom"),
    ("bad-label", bad_label, DischargeError, "one label for two formulas"),
    ("bad-incext-order", bad_incext_order, SchemaMismatch, "IncExt with conjuncts out of order"),
    ("bad-cmp-symbols", bad_cmp_symbols, SchemaMismatch, "IncCmp citing a foreign variable"),
]

FILES = {"ror-idem": "ror_idem.deriv", "anon-weakening": "anon_weakening.deriv",
         "repl-inc": "repl_inc.deriv"}


def builtin_fixtures() -> list[Fixture]:
    _Labels.shared = _Labels()
    out = []
    for name, build, note in POSITIVE:
        d, j = build()
        out.append(Fixture(name, d, j, True, None, note))
    for name, build, err, note in NEGATIVE:
        out.append(Fixture(name, build(), None, False, err, note))
    return out


def fixture(name: str) -> Fixture:
    for f in builtin_fixtures():
        if f.name == name:
            return f
    raise KeyError(name)


def export_fixtures(directory=FIXTURE_DIR) -> list[Path]:
    """Write every builtin fixture as a ``.deriv`` file; returns the paths."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for f in builtin_fixtures():
        path = directory / FILES.get(f.name, f.name.replace("-", "_") + ".deriv")
        dump_derivation(f.derivation, path)
        paths.append(path)
    return paths


def load_fixture_file(name: str) -> Derivation:
    return load_derivation(FIXTURE_DIR / name)


_Labels.shared = _Labels()
