"""Formulas of the learning language: AST, parser, printer and measures.

Concrete syntax (ASCII)::

    phi  ::= imp
    imp  ::= or ("->" imp)?
    or   ::= and ("|" and)*
    and  ::= un ("&" un)*
    un   ::= "~" un | "<>" un | "[]" un | "<-1>" un | "[-1]" un
           | "<-2>" un | "[-2]" un | "<+>" un | "[+]" un
           | atom | "true" | "false" | "(" phi ")"
    atom ::= [a-z][a-z0-9_]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


@dataclass(frozen=True)
class Not:
    sub: Formula


@dataclass(frozen=True)
class And:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies:
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Dia:
    """Learner step along the conjectured relation."""
    sub: Formula


@dataclass(frozen=True)
class Box:
    sub: Formula


@dataclass(frozen=True)
class Cut1:
    """Cut a wrong edge on the current path, rolling the path back."""
    sub: Formula


@dataclass(frozen=True)
class BoxCut1:
    sub: Formula


@dataclass(frozen=True)
class Cut2:
    """Cut a wrong edge that is not on the current path."""
    sub: Formula


@dataclass(frozen=True)
class BoxCut2:
    sub: Formula


@dataclass(frozen=True)
class Add:
    """Reveal a correct edge missing from the conjectured relation."""
    sub: Formula


@dataclass(frozen=True)
class BoxAdd:
    sub: Formula


Formula = Union[Atom, Top, Bot, Not, And, Or, Implies,
                Dia, Box, Cut1, BoxCut1, Cut2, BoxCut2, Add, BoxAdd]

UNARY = (Not, Dia, Box, Cut1, BoxCut1, Cut2, BoxCut2, Add, BoxAdd)
BINARY = (And, Or, Implies)
MODAL = (Dia, Box, Cut1, BoxCut1, Cut2, BoxCut2, Add, BoxAdd)

# box form -> diamond form
DUALS = {Box: Dia, BoxCut1: Cut1, BoxCut2: Cut2, BoxAdd: Add}

_PREFIX = {
    "~": Not, "<>": Dia, "[]": Box,
    "<-1>": Cut1, "[-1]": BoxCut1,
    "<-2>": Cut2, "[-2]": BoxCut2,
    "<+>": Add, "[+]": BoxAdd,
}
_PREFIX_TEXT = {cls: text for text, cls in _PREFIX.items()}


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected: str = ""):
        self.offset = offset
        self.expected = expected
        detail = f" (expected {expected})" if expected else ""
        super().__init__(f"{message} at offset {offset}{detail}")


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<op><-1>|\[-1\]|<-2>|\[-2\]|<\+>|\[\+\]|<>|\[\]|->|[~&|()])
  | (?P<word>[a-z][a-z0-9_]*)
""", re.VERBOSE)


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}",
                             len(text[:pos].encode()), "operator or atom")
        if m.lastgroup != "ws":
            tokens.append((m.group(), len(text[:pos].encode())))
        pos = m.end()
    tokens.append(("", len(text.encode())))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.tokens[self.i][0]

    def offset(self) -> int:
        return self.tokens[self.i][1]

    def advance(self) -> str:
        tok = self.tokens[self.i][0]
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.imp()
        if self.peek():
            raise ParseError(f"unexpected token {self.peek()!r}",
                             self.offset(), "end of input")
        return f

    def imp(self) -> Formula:
        left = self.disj()
        if self.peek() == "->":
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek() == "|":
            self.advance()
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek() == "&":
            self.advance()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok in _PREFIX:
            self.advance()
            return _PREFIX[tok](self.unary())
        if tok == "true":
            self.advance()
            return Top()
        if tok == "false":
            self.advance()
            return Bot()
        if tok == "(":
            self.advance()
            f = self.imp()
            if self.peek() != ")":
                raise ParseError(f"unexpected {self.peek() or 'end of input'!r}",
                                 self.offset(), "')'")
            self.advance()
            return f
        if tok and re.fullmatch(r"[a-z][a-z0-9_]*", tok):
            self.advance()
            return Atom(tok)
        what = repr(tok) if tok else "end of input"
        raise ParseError(f"unexpected {what}", self.offset(),
                         "atom, 'true', 'false', '(' or a prefix operator")


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


# precedence levels: higher binds tighter
_IMP, _OR, _AND, _UN = 1, 2, 3, 4


def _prec(f: Formula) -> int:
    if isinstance(f, Implies):
        return _IMP
    if isinstance(f, Or):
        return _OR
    if isinstance(f, And):
        return _AND
    return _UN


def render_formula(f: Formula) -> str:
    """Print `f` with the fewest parentheses that still parse back to `f`."""
    def wrap(g: Formula, min_prec: int) -> str:
        s = render_formula(g)
        return f"({s})" if _prec(g) < min_prec else s

    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    if isinstance(f, UNARY):
        return _PREFIX_TEXT[type(f)] + wrap(f.sub, _UN)
    if isinstance(f, And):
        return f"{wrap(f.left, _AND)} & {wrap(f.right, _UN)}"
    if isinstance(f, Or):
        return f"{wrap(f.left, _OR)} | {wrap(f.right, _AND)}"
    if isinstance(f, Implies):
        return f"{wrap(f.left, _OR)} -> {wrap(f.right, _IMP)}"
    raise TypeError(f"not a formula: {f!r}")


def modal_depth(f: Formula) -> int:
    if isinstance(f, MODAL):
        return 1 + modal_depth(f.sub)
    if isinstance(f, Not):
        return modal_depth(f.sub)
    if isinstance(f, BINARY):
        return max(modal_depth(f.left), modal_depth(f.right))
    return 0


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, UNARY):
        yield from subformulas(f.sub)
    elif isinstance(f, BINARY):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms(f: Formula) -> list[str]:
    """Atom names occurring in `f`, in order of first occurrence."""
    seen: dict[str, None] = {}
    for g in subformulas(f):
        if isinstance(g, Atom):
            seen.setdefault(g.name)
    return list(seen)


def operators(f: Formula) -> set[type]:
    return {type(g) for g in subformulas(f)}


def expand_duals(f: Formula) -> Formula:
    """Rewrite every box form as not-diamond-not; booleans are kept."""
    if isinstance(f, (Atom, Top, Bot)):
        return f
    if type(f) in DUALS:
        return Not(DUALS[type(f)](Not(expand_duals(f.sub))))
    if isinstance(f, UNARY):
        return type(f)(expand_duals(f.sub))
    return type(f)(expand_duals(f.left), expand_duals(f.right))


def conj(*parts: Formula) -> Formula:
    if not parts:
        return Top()
    f = parts[0]
    for g in parts[1:]:
        f = And(f, g)
    return f


def disj(*parts: Formula) -> Formula:
    if not parts:
        return Bot()
    f = parts[0]
    for g in parts[1:]:
        f = Or(f, g)
    return f


def iterate(op: type, n: int, f: Formula) -> Formula:
    """Apply the unary constructor `op` n times."""
    for _ in range(n):
        f = op(f)
    return f
