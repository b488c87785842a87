"""Surface syntax for operators in theta.

Grammar (all binary operators left associative)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' exponent)*
    atom    := INT | 'theta' | 'θ' | PARAM | '(' expr ')'

``*`` is composition: ``g*theta`` is the left multiple, while ``theta*g``
expands to ``g*theta + theta(g)``.  ``A/g`` needs a theta-free ``g`` and
divides every coefficient of ``A`` by it (left division).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .operator import DiffOp, ThetaOperator
from .poly import Poly, RationalFunction
from .rings import QQ


class ParseError(ValueError):
    def __init__(self, message, position=None, text=None):
        self.message = message
        self.position = position
        self.text = text
        where = "" if position is None else f" at position {position}"
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*|θ|λ)|(.))")
THETA_NAMES = ("theta", "θ")


@dataclass
class _Tok:
    kind: str  # int, name, op, end
    value: str
    pos: int


def _tokenize(text):
    toks = []
    pos = 0
    while text[pos:].strip():
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            toks.append(_Tok("int", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(_Tok("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, text)
            toks.append(_Tok("op", ch, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text, param):
        self.text = text
        self.param = param
        self.names = {param}
        if param == "lambda":
            self.names.add("λ")
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, value):
        t = self.take()
        if t.value != value:
            got = "end of input" if t.kind == "end" else repr(t.value)
            raise ParseError(f"expected {value!r}, got {got}", t.pos, self.text)
        return t

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0, self.text)
        e = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected {t.value!r}", t.pos, self.text)
        return e

    def expr(self):
        left = self.term()
        while self.peek().value in ("+", "-") and self.peek().kind == "op":
            op = self.take().value
            right = self.term()
            left = left + right if op == "+" else left - right
        return left

    def term(self):
        left = self.unary()
        while self.peek().value in ("*", "/") and self.peek().kind == "op":
            tok = self.take()
            right = self.unary()
            if tok.value == "*":
                left = left * right
            else:
                if right.order > 0:
                    raise ParseError("division by an expression containing theta", tok.pos, self.text)
                if right.is_zero():
                    raise ParseError("division by zero", tok.pos, self.text)
                inv = right.coeffs[0].inverse()
                left = DiffOp([inv * c for c in left.coeffs], QQ)
        return left

    def unary(self):
        if self.peek().kind == "op" and self.peek().value == "-":
            self.take()
            return -self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        while self.peek().kind == "op" and self.peek().value == "^":
            tok = self.take()
            e = self.exponent()
            if e < 0:
                if base.order > 0:
                    raise ParseError("negative power of an expression containing theta", tok.pos, self.text)
                if base.is_zero():
                    raise ParseError("negative power of zero", tok.pos, self.text)
                base = DiffOp([base.coeffs[0] ** e], QQ)
            else:
                base = base**e
        return base

    def exponent(self):
        paren = self.peek().kind == "op" and self.peek().value == "("
        if paren:
            self.take()
        sign = 1
        if self.peek().kind == "op" and self.peek().value == "-":
            self.take()
            sign = -1
        t = self.take()
        if t.kind != "int":
            raise ParseError("exponent must be an integer literal", t.pos, self.text)
        if paren:
            self.expect(")")
        return sign * int(t.value)

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return DiffOp([RationalFunction.constant(int(t.value))], QQ)
        if t.kind == "name":
            if t.value in THETA_NAMES:
                return DiffOp.theta(QQ)
            if t.value in self.names:
                return DiffOp([RationalFunction.variable(QQ)], QQ)
            raise ParseError(f"unknown symbol {t.value!r} (parameter is {self.param!r})", t.pos, self.text)
        if t.kind == "op" and t.value == "(":
            e = self.expr()
            self.expect(")")
            return e
        got = "end of input" if t.kind == "end" else repr(t.value)
        raise ParseError(f"unexpected {got}", t.pos, self.text)


def parse_expression(text: str, param: str = "t") -> DiffOp:
    """Parse to a (not necessarily monic) operator with rational coefficients."""
    return _Parser(text, param).parse()


def parse_operator(text: str, param: str = "t") -> ThetaOperator:
    op = parse_expression(text, param)
    if op.is_zero():
        raise ParseError("expression is the zero operator; order >= 1 required")
    if op.order < 1:
        hint = ""
        if any(n in text for n in THETA_NAMES):
            hint = " (theta terms cancelled: note theta*g - g*theta = theta(g), e.g. theta*t - t*theta = t)"
        raise ParseError(f"expression has order 0; order >= 1 required{hint}")
    return ThetaOperator.from_diffop(op, var=param)


def parse_rational_function(text: str, param: str = "t") -> RationalFunction:
    op = parse_expression(text, param)
    if op.order > 0:
        raise ParseError("expected a theta-free expression")
    return op.coeffs[0] if op.coeffs else RationalFunction(Poly([], QQ))


def format_operator(L, param=None) -> str:
    """Inverse of :func:`parse_operator` on monic operators."""
    return L.to_string(param or getattr(L, "var", "t"))
