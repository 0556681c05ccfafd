"""Parser for element literals such as ``5^3``, ``-3/4``, ``t^(3/2) + 2*t``.

The grammar is documented in ``docs/grammar.md``.  Parsing evaluates directly
into the target context, so ``t^(1/2)`` is rejected unless the context's
ramification index allows it.
"""
from __future__ import annotations

import re
from fractions import Fraction

from ..errors import EllvalError, LiteralError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.end() == pos:
            break
        col = m.start(m.lastindex) + 1
        if m.group(1):
            tokens.append(("int", int(m.group(1)), col))
        elif m.group(2):
            tokens.append(("name", m.group(2), col))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise LiteralError(f"unexpected character {ch!r}", col, text)
            tokens.append(("op", ch, col))
        pos = m.end()
    tokens.append(("end", None, len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text, ctx):
        self.text = text
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = self._names()

    def _names(self):
        from .context import LaurentContext

        ctx = self.ctx
        names = {"pi": ctx.uniformizer()}
        if isinstance(ctx, LaurentContext):
            names["t"] = ctx.t(1)
            for k, v in ctx.field.symbols().items():
                names[k] = ctx.coerce(v)
        else:
            names["p"] = ctx.uniformizer()
        return names

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None):
        tok = self.tokens[self.i]
        if (kind and tok[0] != kind) or (value is not None and tok[1] != value):
            want = value if value is not None else kind
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise LiteralError(f"expected {want!r}, got {got}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, value):
        tok = self.tokens[self.i]
        return tok[0] == "op" and tok[1] == value

    def parse(self):
        if self.peek()[0] == "end":
            raise LiteralError("empty literal", 1, self.text)
        value = self.sum()
        tok = self.peek()
        if tok[0] != "end":
            raise LiteralError(f"unexpected {tok[1]!r}", tok[2], self.text)
        return value

    def sum(self):
        value = self.product()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.product()
            value = value + rhs if op == "+" else value - rhs
        return value

    def product(self):
        value = self.unary()
        while self.at("*") or self.at("/"):
            op, col = self.take()[1:]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = value / rhs
                except ZeroDivisionError:
                    raise LiteralError("division by zero", col, self.text) from None
        return value

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base, name, col = self.atom()
        if not self.at("^"):
            return base
        self.take()
        exp_col = self.peek()[2]
        exponent = self.exponent()
        if exponent.denominator != 1:
            if name not in ("t", "pi"):
                raise LiteralError("fractional exponents apply only to t and pi", exp_col, self.text)
            q = exponent if name == "t" else exponent / self.ctx.N
            try:
                return self.ctx.pi_power(q)
            except EllvalError as exc:
                raise LiteralError(str(exc), exp_col, self.text) from None
        try:
            return base ** int(exponent)
        except ZeroDivisionError:
            raise LiteralError("zero raised to a negative power", col, self.text) from None

    def exponent(self):
        if self.at("-"):
            self.take()
            return -Fraction(self.take("int")[1])
        if self.at("("):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            num = self.take("int")[1]
            den = 1
            if self.at("/"):
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise LiteralError("zero denominator in exponent", self.peek()[2], self.text)
            self.take("op", ")")
            return sign * Fraction(num, den)
        return Fraction(self.take("int")[1])

    def atom(self):
        tok = self.peek()
        kind, value, col = tok
        if kind == "int":
            self.take()
            return self.ctx.coerce(value), None, col
        if kind == "name":
            self.take()
            if value == "O" and self.at("("):
                return self._big_o(col), None, col
            if value not in self.names:
                raise LiteralError(f"unknown name {value!r}", col, self.text)
            return self.names[value], value, col
        if self.at("("):
            self.take()
            inner = self.sum()
            self.take("op", ")")
            return inner, None, col
        got = "end of input" if kind == "end" else repr(value)
        raise LiteralError(f"expected a number, name or '(', got {got}", col, self.text)

    def _big_o(self, col):
        from .context import LaurentContext

        if not isinstance(self.ctx, LaurentContext):
            raise LiteralError("O(...) terms need a Laurent backend", col, self.text)
        self.take("op", "(")
        inner = self.sum()
        self.take("op", ")")
        if len(inner.terms) != 1 or inner.prec is not None:
            raise LiteralError("O(...) must contain a single monomial", col, self.text)
        e = min(inner.terms)
        return inner._raw(inner.field, {}, e, inner.N, inner.budget)


def parse_literal(text: str, ctx):
    """Evaluate ``text`` as an element of ``ctx``."""
    return _Parser(text, ctx).parse()
