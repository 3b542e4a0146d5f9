"""Formula syntax trees, ASCII parser/printer and fragment classification."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

TOP = "T"
BOT = "B"
CONSTANTS = (TOP, BOT)

KEYWORDS = frozenset(
    {"vor", "gor", "nabla", "wneg", "sneg", "inc", "ups", "ne", "const", TOP, BOT}
)
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


def is_identifier(name: str) -> bool:
    return bool(_IDENT.match(name)) and name not in KEYWORDS


def _check_ident(name: str) -> None:
    if not is_identifier(name):
        raise ValueError(f"invalid variable name {name!r}")


def _check_term(term: str) -> None:
    if term not in CONSTANTS:
        _check_ident(term)


class Formula:
    """Base class for all syntax-tree nodes.

    Nodes are frozen dataclasses, so equality is structural and nodes are
    hashable. ``str(phi)`` gives the canonical ASCII rendering.
    """

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)

    def children(self) -> tuple[Formula, ...]:
        return ()


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __post_init__(self):
        _check_ident(self.name)

    def __repr__(self):
        return f"Atom({self.name})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bot(Formula):
    def __repr__(self):
        return "Bot()"


class NegOnNonClassical(ValueError):
    """Raised when ``!`` is applied to a non-classical formula."""

    def __init__(self, offending: Formula, position: int | None = None):
        self.offending = offending
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"negation over non-classical formula {offending}{where}")


@dataclass(frozen=True, repr=False)
class Neg(Formula):
    sub: Formula

    def __post_init__(self):
        if not is_classical(self.sub):
            raise NegOnNonClassical(self.sub)

    def children(self):
        return (self.sub,)

    def __repr__(self):
        return f"Neg({self.sub!r})"


@dataclass(frozen=True, repr=False)
class _Binary(Formula):
    left: Formula
    right: Formula

    def children(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class And(_Binary):
    pass


class Or(_Binary):
    pass


class ROr(_Binary):
    """Relevant disjunction (``vor``)."""


class GOr(_Binary):
    """Global disjunction (``gor``)."""


@dataclass(frozen=True, repr=False)
class _Unary(Formula):
    sub: Formula

    def children(self):
        return (self.sub,)

    def __repr__(self):
        return f"{type(self).__name__}({self.sub!r})"


class Might(_Unary):
    pass


class WNeg(_Unary):
    """Weak contradictory negation: true on the empty team or where sub fails."""


class SNeg(_Unary):
    """Contradictory negation."""


class IncArityMismatch(ValueError):
    pass


@dataclass(frozen=True, repr=False)
class Inc(Formula):
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        if len(self.lhs) != len(self.rhs) or not self.lhs:
            raise IncArityMismatch(
                f"inclusion atom needs equal positive widths, got {len(self.lhs)} and {len(self.rhs)}"
            )
        for t in self.lhs + self.rhs:
            _check_term(t)

    @property
    def primitive(self) -> bool:
        return all(t in CONSTANTS for t in self.lhs)

    def __repr__(self):
        return f"Inc({self.lhs}, {self.rhs})"


@dataclass(frozen=True, repr=False)
class Anon(Formula):
    lhs: tuple[str, ...]
    rhs: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "lhs", tuple(self.lhs))
        object.__setattr__(self, "rhs", tuple(self.rhs))
        for t in self.lhs + self.rhs:
            _check_ident(t)

    def __repr__(self):
        return f"Anon({self.lhs}, {self.rhs})"


@dataclass(frozen=True, repr=False)
class NonConst(Formula):
    var: str

    def __post_init__(self):
        _check_ident(self.var)

    def __repr__(self):
        return f"NonConst({self.var})"


@dataclass(frozen=True, repr=False)
class Const(Formula):
    var: str

    def __post_init__(self):
        _check_ident(self.var)

    def __repr__(self):
        return f"Const({self.var})"


Term = str
DISJUNCTIONS = (Or, ROr, GOr)
_CLASSICAL_NODES = (Atom, Top, Bot, Neg, And, Or)


def is_classical(phi: Formula) -> bool:
    stack = [phi]
    while stack:
        node = stack.pop()
        if not isinstance(node, _CLASSICAL_NODES):
            return False
        if isinstance(node, Neg):
            continue  # already validated on construction
        stack.extend(node.children())
    return True


def subformulas(phi: Formula) -> Iterable[Formula]:
    """Pre-order traversal."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(node.children()))


def free_vars(phi: Formula) -> frozenset[str]:
    out: set[str] = set()
    for node in subformulas(phi):
        if isinstance(node, Atom):
            out.add(node.name)
        elif isinstance(node, (Inc, Anon)):
            out.update(t for t in node.lhs + node.rhs if t not in CONSTANTS)
        elif isinstance(node, (NonConst, Const)):
            out.add(node.var)
    return frozenset(out)


def sorted_vars(*formulas: Formula) -> tuple[str, ...]:
    out: set[str] = set()
    for f in formulas:
        out |= free_vars(f)
    return tuple(sorted(out))


# ---------------------------------------------------------------- classify

FLAGS = (
    "classical",
    "uses-ror",
    "uses-inc",
    "uses-primitive-inc-only",
    "uses-anon",
    "uses-nonconst",
    "uses-const",
    "uses-gor",
    "uses-might",
    "uses-wneg",
    "uses-sneg",
)

_FLAG_OF = {
    ROr: "uses-ror",
    GOr: "uses-gor",
    Might: "uses-might",
    WNeg: "uses-wneg",
    SNeg: "uses-sneg",
    Inc: "uses-inc",
    Anon: "uses-anon",
    NonConst: "uses-nonconst",
    Const: "uses-const",
}


def classify(phi: Formula) -> tuple[frozenset[str], frozenset[str]]:
    """Return the fragment flags and the free variables of ``phi``."""
    flags: set[str] = set()
    all_primitive = True
    for node in subformulas(phi):
        flag = _FLAG_OF.get(type(node))
        if flag:
            flags.add(flag)
        if isinstance(node, Inc) and not node.primitive:
            all_primitive = False
    if not flags:
        flags.add("classical")
    if "uses-inc" in flags and all_primitive:
        flags.add("uses-primitive-inc-only")
    return frozenset(flags), free_vars(phi)


# Fragments: which flags a formula may carry to belong to it.
FRAGMENTS: dict[str, frozenset[str]] = {
    "cpl": frozenset({"classical"}),
    "vor": frozenset({"classical", "uses-ror"}),
    "inc": frozenset({"classical", "uses-inc", "uses-primitive-inc-only"}),
    "inc0": frozenset({"classical", "uses-inc", "uses-primitive-inc-only"}),
    "anon": frozenset({"classical", "uses-anon", "uses-nonconst"}),
    "neq": frozenset({"classical", "uses-nonconst"}),
    "might": frozenset({"classical", "uses-might"}),
}

UNION_CLOSED_FLAGS = frozenset(
    {"classical", "uses-ror", "uses-inc", "uses-primitive-inc-only", "uses-anon",
     "uses-nonconst", "uses-might"}
)


def in_fragment(phi: Formula, fragment: str) -> bool:
    flags, _ = classify(phi)
    if fragment == "inc0" and "uses-inc" in flags and "uses-primitive-inc-only" not in flags:
        return False
    if fragment == "union-closed":
        return flags <= UNION_CLOSED_FLAGS
    return flags <= FRAGMENTS[fragment]


def is_union_closed_syntax(phi: Formula) -> bool:
    """True when every connective used preserves union closure."""
    return in_fragment(phi, "union-closed")


# ------------------------------------------------------------ constructors

def conj(items: Sequence[Formula]) -> Formula:
    """Left-associated conjunction; the empty conjunction is T."""
    if not items:
        return Top()
    return reduce(And, items)


def disj(items: Sequence[Formula], kind: type = Or) -> Formula:
    """Left-associated disjunction of the given kind; the empty one is B."""
    if not items:
        return Bot()
    return reduce(kind, items)


def literal(term: Term, sign: int) -> Formula:
    """``term^sign``: the term itself for sign 1, its negation for sign 0."""
    if term == TOP:
        return Top() if sign else Bot()
    if term == BOT:
        return Bot() if sign else Top()
    return Atom(term) if sign else Neg(Atom(term))


def sign_of(const: str) -> int:
    if const not in CONSTANTS:
        raise ValueError(f"{const!r} is not a constant")
    return 1 if const == TOP else 0


def signed_conj(terms: Sequence[Term], signs: Sequence[int | str]) -> Formula:
    """Conjunction of ``t_i^{s_i}``. Signs may be 0/1 or the constants T/B."""
    if len(terms) != len(signs):
        raise ValueError("terms and signs differ in length")
    bits = [sign_of(s) if isinstance(s, str) else int(s) for s in signs]
    return conj([literal(t, b) for t, b in zip(terms, bits)])


def implies(a: Formula, b: Formula) -> Formula:
    return Or(Neg(a), b)


# ---------------------------------------------------------------- printing

_ASCII = {And: "&", Or: "|", ROr: "vor", GOr: "gor"}
_UNICODE = {And: "∧", Or: "∨", ROr: "∨̇", GOr: "⩔"}
_PREFIX_ASCII = {Neg: "!", Might: "nabla ", WNeg: "wneg ", SNeg: "sneg "}
_PREFIX_UNICODE = {Neg: "¬", Might: "▽", WNeg: "∼̇", SNeg: "∼"}


def _render_atomic(phi: Formula, uni: bool) -> str:
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Top):
        return "⊤" if uni else TOP
    if isinstance(phi, Bot):
        return "⊥" if uni else BOT
    if isinstance(phi, Inc):
        if uni:
            tr = {TOP: "⊤", BOT: "⊥"}
            return "".join(tr.get(t, t) for t in phi.lhs) + " ⊆ " + "".join(
                tr.get(t, t) for t in phi.rhs
            )
        return f"inc({' '.join(phi.lhs)} ; {' '.join(phi.rhs)})"
    if isinstance(phi, Anon):
        if uni:
            return f"{''.join(phi.lhs)} Υ {''.join(phi.rhs)}"
        lhs = " ".join(phi.lhs)
        rhs = " ".join(phi.rhs)
        return f"ups({lhs}{' ' if lhs else ''}; {rhs})".replace("; )", ";)")
    if isinstance(phi, NonConst):
        return f"≠({phi.var})" if uni else f"ne({phi.var})"
    if isinstance(phi, Const):
        return f"=({phi.var})" if uni else f"const({phi.var})"
    raise TypeError(phi)


def render(phi: Formula, unicode: bool = False) -> str:
    """Canonical rendering; ``parse(render(phi)) == phi`` for ASCII output."""
    ops = _UNICODE if unicode else _ASCII
    prefixes = _PREFIX_UNICODE if unicode else _PREFIX_ASCII

    def go(node: Formula) -> str:
        t = type(node)
        if t in prefixes:
            return prefixes[t] + wrap_prefix_operand(node.sub)
        if t is And:
            return f"{wrap_and_operand(node.left, True)} {ops[And]} {wrap_and_operand(node.right, False)}"
        if t in DISJUNCTIONS:
            left = go(node.left) if type(node.left) is t or type(node.left) is And or _is_tight(node.left) else f"({go(node.left)})"
            right = go(node.right) if type(node.right) is And or _is_tight(node.right) else f"({go(node.right)})"
            return f"{left} {ops[t]} {right}"
        return _render_atomic(node, unicode)

    def wrap_prefix_operand(sub: Formula) -> str:
        return go(sub) if _is_tight(sub) else f"({go(sub)})"

    def wrap_and_operand(sub: Formula, left: bool) -> str:
        if _is_tight(sub) or (left and type(sub) is And):
            return go(sub)
        return f"({go(sub)})"

    return go(phi)


def _is_tight(node: Formula) -> bool:
    return not isinstance(node, (And,) + DISJUNCTIONS)


# ----------------------------------------------------------------- parsing

class ParseError(ValueError):
    """Syntax error with the offending position and what was expected."""

    def __init__(self, position: int, expected: str, text: str = ""):
        self.position = position
        self.expected = expected
        snippet = text[position:position + 12] if text else ""
        super().__init__(f"position {position}: expected {expected}" + (f", found {snippet!r}" if snippet else ""))


_TOKEN = re.compile(r"\s*(?:([A-Za-z][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, int]]:
    for i, ch in enumerate(text):
        if ord(ch) > 127:
            raise ParseError(i, "ASCII input", text)
    tokens: list[tuple[str, int]] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.group(0).strip() == "":
            break
        word, sym = m.group(1), m.group(2)
        start = m.start(1) if word else m.start(2)
        if sym is not None and sym not in "!&|();":
            raise ParseError(start, "a token", text)
        tokens.append((word or sym, start))
        pos = m.end()
    tokens.append(("<eof>", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def pos(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        if self.peek() != tok:
            raise ParseError(self.pos(), repr(tok), self.text)
        self.advance()

    def formula(self) -> Formula:
        left = self.conjunction()
        kind = None
        ops = {"|": Or, "vor": ROr, "gor": GOr}
        while self.peek() in ops:
            op_pos = self.pos()
            this = ops[self.advance()]
            if kind is not None and this is not kind:
                raise ParseError(op_pos, "parentheses when mixing disjunctions", self.text)
            kind = this
            left = kind(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.prefix()
        while self.peek() == "&":
            self.advance()
            left = And(left, self.prefix())
        return left

    def prefix(self) -> Formula:
        tok = self.peek()
        start = self.pos()
        if tok == "!":
            self.advance()
            sub = self.prefix()
            if not is_classical(sub):
                raise NegOnNonClassical(sub, start)
            return Neg(sub)
        unary = {"nabla": Might, "wneg": WNeg, "sneg": SNeg}
        if tok in unary:
            self.advance()
            return unary[tok](self.prefix())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.peek()
        start = self.pos()
        if tok == "(":
            self.advance()
            inner = self.formula()
            self.expect(")")
            return inner
        if tok == TOP:
            self.advance()
            return Top()
        if tok == BOT:
            self.advance()
            return Bot()
        if tok in ("inc", "ups"):
            self.advance()
            self.expect("(")
            lhs = self.terms(allow_consts=tok == "inc")
            self.expect(";")
            rhs = self.terms(allow_consts=tok == "inc")
            self.expect(")")
            if tok == "inc":
                if len(lhs) != len(rhs) or not lhs:
                    raise IncArityMismatch(f"position {start}: widths {len(lhs)} and {len(rhs)}")
                return Inc(tuple(lhs), tuple(rhs))
            return Anon(tuple(lhs), tuple(rhs))
        if tok in ("ne", "const"):
            self.advance()
            self.expect("(")
            name = self.ident()
            self.expect(")")
            return NonConst(name) if tok == "ne" else Const(name)
        if is_identifier(tok):
            self.advance()
            return Atom(tok)
        raise ParseError(start, "a formula", self.text)

    def ident(self) -> str:
        tok = self.peek()
        if not is_identifier(tok):
            raise ParseError(self.pos(), "a variable", self.text)
        self.advance()
        return tok

    def terms(self, allow_consts: bool) -> list[str]:
        out = []
        while True:
            tok = self.peek()
            if is_identifier(tok) or (allow_consts and tok in CONSTANTS):
                out.append(self.advance())
            else:
                return out


def parse(text: str) -> Formula:
    p = _Parser(text)
    phi = p.formula()
    if p.peek() != "<eof>":
        raise ParseError(p.pos(), "end of input", text)
    return phi


def as_formula(x: Formula | str) -> Formula:
    return parse(x) if isinstance(x, str) else x


FormulaLike = Union[Formula, str]
