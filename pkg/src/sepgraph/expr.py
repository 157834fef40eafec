"""Parser for algebra expressions such as ``a1 a1^ + (1/3) v``.

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor factor*              # juxtaposition is the product
    factor  := primary ('^' | '*')*        # postfix adjoint
    primary := INT ['/' INT] | NAME | '(' expr ')'

``i`` always denotes the imaginary unit, so a graph symbol named ``i``
cannot be referenced.  A bare scalar stands for that multiple of the unit.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ExprSyntaxError, UnknownSymbol
from .leavitt import Element, LeavittAlgebra
from .scalars import I

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        col = m.start(m.lastindex) + 1
        if m.group(1) is not None:
            out.append(("int", m.group(1), col))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-^*/()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", 1, col)
            out.append((ch, ch, col))
        pos = m.end()
    out.append(("end", "", len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, algebra: LeavittAlgebra):
        self.toks = tokenize(text)
        self.pos = 0
        self.alg = algebra

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", 1, tok[2])
        self.pos += 1
        return tok

    def parse(self) -> Element:
        if self.peek()[0] == "end":
            raise ExprSyntaxError("empty expression", 1, 1)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ExprSyntaxError(f"unexpected {tok[1]!r}", 1, tok[2])
        return value

    def expr(self) -> Element:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        value = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Element:
        value = self.factor()
        while self.peek()[0] in ("int", "name", "("):
            value = value * self.factor()
        return value

    def factor(self) -> Element:
        value = self.primary()
        while self.peek()[0] in ("^", "*"):
            self.take()
            value = value.star()
        return value

    def primary(self) -> Element:
        kind, text, col = self.peek()
        if kind == "int":
            self.take()
            num = int(text)
            if self.peek()[0] == "/":
                self.take()
                den = int(self.take("int")[1])
                if den == 0:
                    raise ExprSyntaxError("division by zero", 1, col)
                return self.alg.scalar(Fraction(num, den))
            return self.alg.scalar(num)
        if kind == "name":
            self.take()
            if text == "i":
                return self.alg.scalar(I)
            g = self.alg.graph
            if g.has_vertex(text):
                return self.alg.vertex(text)
            if g.has_edge(text):
                return self.alg.edge(text)
            raise UnknownSymbol(f"unknown symbol {text!r} at column {col}")
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "end" else repr(text)
        raise ExprSyntaxError(f"expected a factor, found {what}", 1, col)


def parse_element(text: str, algebra: LeavittAlgebra) -> Element:
    return _Parser(text, algebra).parse()
