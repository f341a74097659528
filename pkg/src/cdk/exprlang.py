"""A small expression language over A_n.

Grammar::

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | primary
    primary := rational | 'e' integer | identifier | call | '(' expr ')'
    call    := identifier '(' [expr (',' expr)*] ')'

``*`` groups to the left, so ``a*b*c`` means ``(a*b)*c``.  The algebras are
not associative for n >= 3; parenthesize when the grouping matters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import cdcore
from .cdcore import AlgebraError, Element
from .structure import alternates, alternates_strongly


class ParseError(ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f" (expected {', '.join(repr(e) for e in self.expected)})" if expected else ""
        super().__init__(f"syntax error at offset {offset}: {message}{detail}")


class EvalError(AlgebraError):
    pass


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class RationalLit:
    value: Fraction


@dataclass(frozen=True)
class BasisRef:
    index: int


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


Expr = Union[RationalLit, BasisRef, Name, Neg, Add, Sub, Mul, Call]


# -- lexer ---------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<rational>\d+(?:/\d+)?)
  | (?P<basis>e\d+)(?![A-Za-z0-9_])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if kind == "rational" and "/" in tok and int(tok.split("/")[1]) == 0:
                raise ParseError("zero denominator", pos)
            tokens.append(Token(kind if kind != "op" else tok, tok, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- parser ---------------------------------------------------------------------

MAX_DEPTH = 200


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail({kind})
        return self.advance()

    def fail(self, expected):
        t = self.tok
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.offset, expected)

    def parse(self) -> Expr:
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"+", "-", "*", "end of input"})
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.tok.kind in ("+", "-"):
            op = self.advance().kind
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.tok.kind == "*":
            self.advance()
            e = Mul(e, self.factor())
        return e

    def factor(self) -> Expr:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.offset)
        try:
            if self.tok.kind == "-":
                self.advance()
                return Neg(self.factor())
            return self.primary()
        finally:
            self.depth -= 1

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "rational":
            self.advance()
            return RationalLit(Fraction(t.text))
        if t.kind == "basis":
            self.advance()
            return BasisRef(int(t.text[1:]))
        if t.kind == "ident":
            self.advance()
            if self.tok.kind != "(":
                return Name(t.text)
            self.advance()
            args = []
            if self.tok.kind != ")":
                args.append(self.expr())
                while self.tok.kind == ",":
                    self.advance()
                    args.append(self.expr())
            if self.tok.kind != ")":
                self.fail({",", ")"} if args else {")"})
            self.advance()
            return Call(t.text, tuple(args))
        if t.kind == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail({"rational", "e<index>", "identifier", "-", "("})


def parse(text: str) -> Expr:
    return _Parser(text).parse()


# -- evaluation ---------------------------------------------------------------------

@dataclass
class EvalContext:
    level: int
    bindings: dict = field(default_factory=dict)

    def bind(self, name: str, value) -> None:
        if isinstance(value, Element) and value.level != self.level:
            raise EvalError("bound elements must share the context level")
        if name in CALLS or re.fullmatch(r"e\d+", name):
            raise EvalError(f"cannot rebind reserved name {name!r}")
        self.bindings[name] = value


def _element(v, level: int) -> Element:
    if isinstance(v, Element):
        return v
    if isinstance(v, bool):
        raise EvalError("booleans cannot be used as algebra elements")
    return Element.scalar(v, level)


def _is_scalar(v) -> bool:
    return isinstance(v, Fraction) and not isinstance(v, bool)


CALLS = {
    # name: (arity, function(level, *args))
    "conj": (1, lambda n, x: cdcore.conjugate(_element(x, n))),
    "tilde": (1, lambda n, x: cdcore.tilde(_element(x, n))),
    "trace": (1, lambda n, x: cdcore.trace(_element(x, n))),
    "norm2": (1, lambda n, x: cdcore.norm2(_element(x, n))),
    "inner": (2, lambda n, x, y: cdcore.inner(_element(x, n), _element(y, n))),
    "assoc": (3, lambda n, x, y, z: cdcore.associator(_element(x, n), _element(y, n),
                                                      _element(z, n))),
    "comm": (2, lambda n, x, y: cdcore.commutator(_element(x, n), _element(y, n))),
    "alt": (2, lambda n, x, y: alternates(_element(x, n), _element(y, n))),
    "altstrong": (2, lambda n, x, y: bool(alternates_strongly(_element(x, n),
                                                             _element(y, n)))),
}


def evaluate(e: Expr, ctx: EvalContext):
    """Evaluate to an Element, a Fraction (scalar calls, bare rationals) or a bool."""
    n = ctx.level
    if isinstance(e, RationalLit):
        return e.value
    if isinstance(e, BasisRef):
        if e.index >= 1 << n:
            raise EvalError(f"index e{e.index} out of range for level {n}")
        return Element.basis(e.index, n)
    if isinstance(e, Name):
        if e.ident not in ctx.bindings:
            raise EvalError(f"unknown identifier {e.ident!r}")
        return ctx.bindings[e.ident]
    if isinstance(e, Neg):
        v = evaluate(e.operand, ctx)
        if isinstance(v, bool):
            raise EvalError("cannot negate a boolean")
        return -v
    if isinstance(e, (Add, Sub, Mul)):
        lhs = evaluate(e.left, ctx)
        rhs = evaluate(e.right, ctx)
        if isinstance(lhs, bool) or isinstance(rhs, bool):
            raise EvalError("booleans do not support arithmetic")
        if _is_scalar(lhs) and _is_scalar(rhs):
            return lhs + rhs if isinstance(e, Add) else lhs - rhs if isinstance(e, Sub) \
                else lhs * rhs
        if isinstance(e, Mul):
            if _is_scalar(lhs):
                return rhs.scale(lhs)
            if _is_scalar(rhs):
                return lhs.scale(rhs)
            return cdcore.cd_mul(lhs, rhs)
        lhs, rhs = _element(lhs, n), _element(rhs, n)
        return lhs + rhs if isinstance(e, Add) else lhs - rhs
    if isinstance(e, Call):
        if e.name not in CALLS:
            raise EvalError(f"unknown function {e.name!r}")
        arity, fn = CALLS[e.name]
        if len(e.args) != arity:
            raise EvalError(f"{e.name} takes {arity} argument(s), got {len(e.args)}")
        return fn(n, *(evaluate(a, ctx) for a in e.args))
    raise EvalError(f"cannot evaluate {e!r}")


def eval_text(text: str, level: int, bindings: dict = None):
    return evaluate(parse(text), EvalContext(level, dict(bindings or {})))


# -- formatting --------------------------------------------------------------------

def format_element(x: Element) -> str:
    terms = []
    for i, c in enumerate(x.coeffs):
        if not c:
            continue
        mag = abs(c)
        body = f"e{i}" if mag == 1 else f"{mag}*e{i}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("- " if c < 0 else "+ ") + body)
    return " ".join(terms) if terms else "0"


def format_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Element):
        return format_element(v)
    return str(v)


# -- REPL ---------------------------------------------------------------------------

_LET = re.compile(r"\s*let\s+([A-Za-z_][A-Za-z0-9_]*)\s*=(.*)$")


class Repl:
    """Line protocol: ``let name = expr``, ``expr``, ``:level n``, ``:quit``."""

    def __init__(self, level: int):
        self.ctx = EvalContext(level)
        self.done = False

    def handle(self, line: str) -> str:
        line = line.strip()
        if not line:
            return ""
        try:
            if line == ":quit":
                self.done = True
                return ""
            if line.startswith(":level"):
                arg = line[len(":level"):].strip()
                if not arg.isdigit():
                    raise EvalError(":level needs a non-negative integer")
                # bindings are level-specific
                self.ctx = EvalContext(int(arg))
                return f"level {self.ctx.level}"
            m = _LET.match(line)
            if m:
                value = evaluate(parse(m.group(2)), self.ctx)
                self.ctx.bind(m.group(1), value)
                return f"{m.group(1)} = {format_value(value)}"
            return format_value(evaluate(parse(line), self.ctx))
        except (ParseError, AlgebraError, ZeroDivisionError) as exc:
            return f"error: {exc}"
