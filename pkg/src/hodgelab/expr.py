"""Surface syntax for differential forms on R^n.

Grammar (whitespace is insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | post
    post   := atom ('^' (nat | atom))*      # '^' nat is a power, otherwise a wedge
    atom   := rational | 'x'nat | 'dx'nat | '(' expr ')'
            | op '(' expr ')' | 'witten' '[' rational ';' expr ']' '(' expr ')'
    op     := d | star | codiff | laplacian | homotopy | grad | curl | div

``*`` multiplies forms with the wedge product (plain multiplication when
either side is a function).  A power is only defined on functions.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from . import exterior as ext
from .errors import FormTypeError, ParseError
from .exterior import DifferentialForm
from .poly import Polynomial

OPERATORS = ("d", "star", "codiff", "laplacian", "homotopy", "grad", "curl", "div")

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<num>\d+(?:\.\d+)?(?:/\d+)?)
  | (?P<ident>[A-Za-z_]+\d*)
  | (?P<punct>[-+*^()\[\];])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str       # num, var, blade, op, punct, end
    text: str
    line: int
    column: int
    value: object = None


def tokenize(src: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {src[pos]!r}", line, col)
        text = m.group()
        if m.lastgroup == "ws":
            for k, ch in enumerate(text):
                if ch == "\n":
                    line += 1
                    line_start = pos + k + 1
        elif m.lastgroup == "num":
            if "." in text and "/" in text:
                raise ParseError(f"malformed number {text!r}", line, col)
            value = Fraction(text)
            tokens.append(Token("num", text, line, col, value))
        elif m.lastgroup == "ident":
            blade = re.fullmatch(r"dx(\d+)", text)
            var = re.fullmatch(r"x(\d+)", text)
            if blade:
                tokens.append(Token("blade", text, line, col, int(blade.group(1))))
            elif var:
                tokens.append(Token("var", text, line, col, int(var.group(1))))
            elif text in OPERATORS or text == "witten":
                tokens.append(Token("op", text, line, col, text))
            else:
                raise ParseError(f"unknown identifier {text!r}", line, col)
        else:
            tokens.append(Token("punct", text, line, col))
        pos = m.end()
    col = pos - line_start + 1
    tokens.append(Token("end", "", line, col))
    return tokens


# -- AST --------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: Fraction
    pos: Tuple[int, int]


@dataclass(frozen=True)
class Var:
    index: int
    pos: Tuple[int, int]


@dataclass(frozen=True)
class Blade:
    index: int
    pos: Tuple[int, int]


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: Tuple[int, int]


@dataclass(frozen=True)
class BinOp:
    op: str         # '+', '-', '*', 'wedge'
    left: "Node"
    right: "Node"
    pos: Tuple[int, int]


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: Tuple[int, int]


@dataclass(frozen=True)
class Apply:
    name: str
    arg: "Node"
    pos: Tuple[int, int]
    t: Optional[Fraction] = None
    f: Optional["Node"] = None


Node = Union[Num, Var, Blade, Neg, BinOp, Pow, Apply]


class _Parser:
    def __init__(self, src: str, n: int):
        self.tokens = tokenize(src)
        self.i = 0
        self.n = n

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def at(self, text: str) -> bool:
        return self.tok.kind == "punct" and self.tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise ParseError(f"expected {text!r}, found {found!r}", self.tok.line, self.tok.column)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected {self.tok.text!r}", self.tok.line, self.tok.column)
        return node

    def expr(self) -> Node:
        start = self.tok
        if self.at("+"):
            self.advance()
            node = self.term()
        elif self.at("-"):
            self.advance()
            node = Neg(self.term(), (start.line, start.column))
        else:
            node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance()
            node = BinOp(op.text, node, self.term(), (op.line, op.column))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*"):
            op = self.advance()
            node = BinOp("*", node, self.unary(), (op.line, op.column))
        return node

    def unary(self) -> Node:
        if self.at("-"):
            op = self.advance()
            return Neg(self.unary(), (op.line, op.column))
        return self.post()

    def post(self) -> Node:
        node = self.atom()
        while self.at("^"):
            op = self.advance()
            if self.tok.kind == "num":
                exp = self.advance()
                if exp.value.denominator != 1 or "." in exp.text:
                    raise ParseError("exponents must be natural numbers", exp.line, exp.column)
                node = Pow(node, int(exp.value), (op.line, op.column))
            else:
                node = BinOp("wedge", node, self.atom(), (op.line, op.column))
        self._check_blade_chain(node)
        return node

    def _check_blade_chain(self, node: Node) -> None:
        count, cur = 0, node
        while isinstance(cur, BinOp) and cur.op == "wedge" and isinstance(cur.right, Blade):
            count += 1
            cur = cur.left
        if isinstance(cur, Blade) and count + 1 > self.n:
            raise ParseError(f"blade of degree {count + 1} exceeds the dimension {self.n}",
                             cur.pos[0], cur.pos[1])

    def _index(self, tok: Token) -> int:
        if not 1 <= tok.value <= self.n:
            raise ParseError(f"index {tok.value} in {tok.text!r} outside 1..{self.n}",
                             tok.line, tok.column)
        return tok.value

    def rational(self) -> Fraction:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        tok = self.tok
        if tok.kind != "num":
            raise ParseError("expected a rational number", tok.line, tok.column)
        self.advance()
        return sign * tok.value

    def atom(self) -> Node:
        tok = self.tok
        pos = (tok.line, tok.column)
        if tok.kind == "num":
            self.advance()
            return Num(tok.value, pos)
        if tok.kind == "var":
            self.advance()
            return Var(self._index(tok), pos)
        if tok.kind == "blade":
            self.advance()
            return Blade(self._index(tok), pos)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "op":
            self.advance()
            if tok.value == "witten":
                self.expect("[")
                t = self.rational()
                self.expect(";")
                f = self.expr()
                self.expect("]")
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Apply("witten", arg, pos, t=t, f=f)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Apply(tok.value, arg, pos)
        found = tok.text or "end of input"
        raise ParseError(f"unexpected {found!r}", tok.line, tok.column)


def parse_form(src: str, n: int) -> Node:
    """Parse ``src`` into an AST for forms on R^n."""
    if n < 1:
        raise ValueError("the ambient dimension must be at least 1")
    return _Parser(src, n).parse()


# -- evaluation ---------------------------------------------------------------

def _fail(node: Node, message: str):
    raise FormTypeError(message, *node.pos)


def evaluate(node: Node, n: int) -> DifferentialForm:
    if isinstance(node, Num):
        return DifferentialForm.function(Polynomial.constant(n, node.value))
    if isinstance(node, Var):
        return DifferentialForm.function(Polynomial.variable(n, node.index))
    if isinstance(node, Blade):
        return DifferentialForm.blade(n, node.index)
    if isinstance(node, Neg):
        return -evaluate(node.operand, n)
    if isinstance(node, Pow):
        base = evaluate(node.base, n)
        if base.degree:
            _fail(node, f"cannot raise a {base.degree}-form to a power")
        return DifferentialForm.function(base[()] ** node.exponent)
    if isinstance(node, BinOp):
        a, b = evaluate(node.left, n), evaluate(node.right, n)
        if node.op in "+-":
            if a.degree != b.degree:
                _fail(node, f"cannot add a {a.degree}-form and a {b.degree}-form")
            return a + b if node.op == "+" else a - b
        return ext.wedge(a, b)
    if isinstance(node, Apply):
        w = evaluate(node.arg, n)
        try:
            return _apply(node, w, n)
        except (ValueError, IndexError) as exc:
            _fail(node, f"{node.name}: {exc}")
    raise TypeError(f"unknown node {node!r}")


def _apply(node: Apply, w: DifferentialForm, n: int) -> DifferentialForm:
    name = node.name
    if name == "d":
        return ext.exterior_derivative(w)
    if name == "star":
        return ext.hodge_star(w)
    if name == "codiff":
        return ext.codifferential(w)
    if name == "laplacian":
        return ext.hodge_laplacian(w)
    if name == "homotopy":
        return ext.homotopy_operator(w)
    if name == "grad":
        return ext.grad(w)
    if name == "curl":
        return ext.curl(w)
    if name == "div":
        return ext.div(w)
    if name == "witten":
        f = evaluate(node.f, n)
        if f.degree:
            _fail(node.f, "the Witten weight must be a function")
        return ext.witten_derivative(w, f[()], node.t)
    raise ValueError(f"unknown operator {name}")


def parse_and_eval(src: str, n: int) -> DifferentialForm:
    return evaluate(parse_form(src, n), n)


def parse_polynomial(src: str, n: int) -> Polynomial:
    w = parse_and_eval(src, n)
    if w.degree:
        raise FormTypeError(f"expected a polynomial, got a {w.degree}-form", 1, 1)
    return w[()]


def format_form(w: DifferentialForm) -> str:
    """Canonical text that parses back to ``w``."""
    if w.degree == 0:
        return str(w[()])
    if w.is_zero():
        return "0*" + "^".join(f"dx{i}" for i in range(1, w.degree + 1))
    parts = []
    for idx, c in w.items():
        blade = "^".join(f"dx{i}" for i in idx)
        parts.append(blade if c == 1 else f"({c})*{blade}")
    return " + ".join(parts)
