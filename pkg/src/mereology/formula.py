"""Syntax of the mereological languages: terms, formulas, parser and printer.

Two theory modes share one grammar.  In set mode the top constant ``1`` is
illegal; in class mode it denotes the universal class.

ASCII surface syntax::

    a <= b            inclusion
    a = b             equality
    |t| = 3           t has exactly three atoms below it
    a \\/ b, a /\\ b, a - b, 0, 1
    ~  &  |  ->  <->  E x. phi  A x. phi
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Union


class TheoryMode(enum.Enum):
    SET = "set"
    CLASS = "class"

    @classmethod
    def parse(cls, text: str) -> "TheoryMode":
        try:
            return cls(text.lower())
        except ValueError:
            raise ValueError(f"unknown theory mode {text!r} (expected 'set' or 'class')") from None


# --------------------------------------------------------------------------
# terms


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Universe:
    pass


@dataclass(frozen=True)
class Union_:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Inter:
    left: "Term"
    right: "Term"


@dataclass(frozen=True)
class Diff:
    left: "Term"
    right: "Term"


Term = Union[Var, Empty, Universe, Union_, Inter, Diff]

# --------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Subseteq:
    left: Term
    right: Term


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class CardEq:
    term: Term
    n: int


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


Formula = Union[Subseteq, Equal, CardEq, Not, And, Or, Implies, Iff, Exists, Forall]

ATOMIC = (Subseteq, Equal, CardEq)
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Exists, Forall)


def conj(parts) -> Formula:
    """Right-nested conjunction of a nonempty sequence of formulas."""
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts) -> Formula:
    parts = list(parts)
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


# --------------------------------------------------------------------------
# traversal helpers


def term_variables(t: Term) -> Iterator[str]:
    if isinstance(t, Var):
        yield t.name
    elif isinstance(t, (Union_, Inter, Diff)):
        yield from term_variables(t.left)
        yield from term_variables(t.right)


def term_uses_universe(t: Term) -> bool:
    if isinstance(t, Universe):
        return True
    if isinstance(t, (Union_, Inter, Diff)):
        return term_uses_universe(t.left) or term_uses_universe(t.right)
    return False


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.body)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, QUANTIFIERS):
        yield from subformulas(f.body)


def atom_terms(f: Formula) -> tuple:
    if isinstance(f, CardEq):
        return (f.term,)
    return (f.left, f.right)


def uses_universe(f: Formula) -> bool:
    return any(
        term_uses_universe(t)
        for g in subformulas(f) if isinstance(g, ATOMIC)
        for t in atom_terms(g)
    )


def free_variables(f: Formula) -> list:
    """Free variable names of ``f`` in order of first occurrence."""
    seen: list = []

    def walk(g, bound):
        if isinstance(g, ATOMIC):
            for t in atom_terms(g):
                for name in term_variables(t):
                    if name not in bound and name not in seen:
                        seen.append(name)
        elif isinstance(g, Not):
            walk(g.body, bound)
        elif isinstance(g, BINARY):
            walk(g.left, bound)
            walk(g.right, bound)
        else:
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return seen


def quantifier_rank(f: Formula) -> int:
    if isinstance(f, ATOMIC):
        return 0
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    if isinstance(f, BINARY):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    return 1 + quantifier_rank(f.body)


def max_constant(f: Formula) -> int:
    return max((g.n for g in subformulas(f) if isinstance(g, CardEq)), default=0)


def rename_bound(f: Formula, avoid=()) -> Formula:
    """Alpha-rename every bound variable to a fresh name unused elsewhere.

    After renaming no quantifier shadows a free variable or another
    quantifier, which lets the elimination code index variables by name.
    """
    taken = set(avoid) | set(free_variables(f))
    for g in subformulas(f):
        if isinstance(g, QUANTIFIERS):
            taken.add(g.var)
    counter = itertools.count()

    def fresh(base):
        while True:
            name = f"{base}_{next(counter)}"
            if name not in taken:
                taken.add(name)
                return name

    def sub_term(t, env):
        if isinstance(t, Var):
            return Var(env.get(t.name, t.name))
        if isinstance(t, (Union_, Inter, Diff)):
            return type(t)(sub_term(t.left, env), sub_term(t.right, env))
        return t

    def walk(g, env):
        if isinstance(g, CardEq):
            return CardEq(sub_term(g.term, env), g.n)
        if isinstance(g, (Subseteq, Equal)):
            return type(g)(sub_term(g.left, env), sub_term(g.right, env))
        if isinstance(g, Not):
            return Not(walk(g.body, env))
        if isinstance(g, BINARY):
            return type(g)(walk(g.left, env), walk(g.right, env))
        new = fresh(g.var)
        return type(g)(new, walk(g.body, {**env, g.var: new}))

    return walk(f, {})


# --------------------------------------------------------------------------
# errors


class FormulaError(ValueError):
    """Base class for parse-time errors; carries a 1-based position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class ParseError(FormulaError):
    pass


class ModeError(FormulaError):
    pass


class UnboundVariableError(FormulaError):
    pass


# --------------------------------------------------------------------------
# lexer

_SYMBOLS = ["<->", "->", "<=", "\\/", "/\\", "-", "=", "|", "&", "~", "(", ")", "."]
KEYWORDS = {"E", "A"}


@dataclass(frozen=True)
class Token:
    kind: str  # 'sym', 'ident', 'nat', 'kw', 'eof'
    text: str
    line: int
    column: int


def tokenize(text: str) -> list:
    tokens = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if ch.isspace():
            i, col = i + 1, col + 1
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(Token("sym", sym, line, col))
                i, col = i + len(sym), col + len(sym)
                break
        else:
            if ch.isascii() and (ch.isalpha() or ch == "_"):
                j = i
                while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                word = text[i:j]
                tokens.append(Token("kw" if word in KEYWORDS else "ident", word, line, col))
            elif ch.isascii() and ch.isdigit():
                j = i
                while j < n and text[j].isascii() and text[j].isdigit():
                    j += 1
                word = text[i:j]
                tokens.append(Token("nat", word, line, col))
            else:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            col += j - i
            i = j
    tokens.append(Token("eof", "", line, col))
    return tokens


# --------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str, mode: TheoryMode):
        self.toks = tokenize(text)
        self.pos = 0
        self.mode = mode

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def at(self, text: str) -> bool:
        return self.tok.kind == "sym" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"expected {text!r}")
        t = self.tok
        self.pos += 1
        return t

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.column)

    # formula := iff
    def formula(self) -> Formula:
        left = self.imp()
        while self.at("<->"):
            self.pos += 1
            left = Iff(left, self.imp())
        return left

    def imp(self) -> Formula:
        left = self.or_()
        while self.at("->"):
            self.pos += 1
            left = Implies(left, self.or_())
        return left

    def or_(self) -> Formula:
        left = self.and_()
        while self.at("|"):
            self.pos += 1
            left = Or(left, self.and_())
        return left

    def and_(self) -> Formula:
        left = self.unary()
        while self.at("&"):
            self.pos += 1
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        if self.at("~"):
            self.pos += 1
            return Not(self.unary())
        if self.tok.kind == "kw":
            kind = Exists if self.tok.text == "E" else Forall
            self.pos += 1
            if self.tok.kind != "ident":
                self.fail("expected a variable after quantifier")
            name = self.tok.text
            self.pos += 1
            self.expect(".")
            # quantifier scope extends as far right as possible
            return kind(name, self.formula())
        return self.atom()

    def atom(self) -> Formula:
        if self.at("|"):
            self.pos += 1
            t = self.term()
            self.expect("|")
            self.expect("=")
            if self.tok.kind != "nat":
                self.fail("expected a natural number")
            n = int(self.tok.text)
            self.pos += 1
            return CardEq(t, n)
        if self.at("("):
            # either a parenthesised formula or a term starting with '('
            save = self.pos
            try:
                return self.relation()
            except ParseError:
                self.pos = save
            self.pos += 1
            f = self.formula()
            self.expect(")")
            return f
        return self.relation()

    def relation(self) -> Formula:
        left = self.term()
        if self.at("<="):
            self.pos += 1
            return Subseteq(left, self.term())
        if self.at("="):
            self.pos += 1
            return Equal(left, self.term())
        self.fail("expected '<=' or '='")

    def term(self) -> Term:
        left = self.tfactor()
        while self.at("\\/") or self.at("-"):
            op = Union_ if self.tok.text == "\\/" else Diff
            self.pos += 1
            left = op(left, self.tfactor())
        return left

    def tfactor(self) -> Term:
        left = self.tatom()
        while self.at("/\\"):
            self.pos += 1
            left = Inter(left, self.tatom())
        return left

    def tatom(self) -> Term:
        t = self.tok
        if t.kind == "ident":
            self.pos += 1
            return Var(t.text)
        if t.kind == "nat" and t.text in ("0", "1"):
            self.pos += 1
            if t.text == "0":
                return Empty()
            if self.mode is TheoryMode.SET:
                raise ModeError("the top constant 1 is not available in set mode", t.line, t.column)
            return Universe()
        if self.at("("):
            self.pos += 1
            inner = self.term()
            self.expect(")")
            return inner
        self.fail("expected a term")


def parse(text: str, mode: TheoryMode = TheoryMode.CLASS, params=None) -> Formula:
    """Parse ``text`` into a formula.

    If ``params`` is given, every free variable must be listed in it,
    otherwise :class:`UnboundVariableError` is raised.
    """
    if isinstance(mode, str):
        mode = TheoryMode.parse(mode)
    p = _Parser(text, mode)
    try:
        f = p.formula()
    except RecursionError:
        raise ParseError("formula nested too deeply", 1, 1) from None
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    if params is not None:
        extra = [v for v in free_variables(f) if v not in params]
        if extra:
            raise UnboundVariableError(f"unbound variable {extra[0]!r}")
    return f


def parse_term(text: str, mode: TheoryMode = TheoryMode.CLASS) -> Term:
    p = _Parser(text, mode)
    t = p.term()
    if p.tok.kind != "eof":
        p.fail("unexpected trailing input")
    return t


# --------------------------------------------------------------------------
# printer

_TERM_OPS = {Union_: "\\/", Inter: "/\\", Diff: "-"}
_FORMULA_OPS = {And: "&", Or: "|", Implies: "->", Iff: "<->"}


def render_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Empty):
        return "0"
    if isinstance(t, Universe):
        return "1"
    return f"({render_term(t.left)} {_TERM_OPS[type(t)]} {render_term(t.right)})"


def _bare_term(t: Term) -> str:
    s = render_term(t)
    if isinstance(t, (Union_, Inter, Diff)):
        return s[1:-1]
    return s


def render(f: Formula) -> str:
    """Fully parenthesised ASCII rendering; ``parse(render(f)) == f``."""
    if isinstance(f, Subseteq):
        return f"{_bare_term(f.left)} <= {_bare_term(f.right)}"
    if isinstance(f, Equal):
        return f"{_bare_term(f.left)} = {_bare_term(f.right)}"
    if isinstance(f, CardEq):
        return f"|{_bare_term(f.term)}| = {f.n}"
    if isinstance(f, Not):
        return "~" + _nested(f.body)
    if isinstance(f, BINARY):
        return f"({_nested(f.left)} {_FORMULA_OPS[type(f)]} {_nested(f.right)})"
    q = "E" if isinstance(f, Exists) else "A"
    return f"{q} {f.var}. {render(f.body)}"


def _nested(f: Formula) -> str:
    if isinstance(f, ATOMIC):
        return f"({render(f)})"
    if isinstance(f, QUANTIFIERS):
        return f"({render(f)})"
    return render(f)
