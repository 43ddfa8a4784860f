"""Exact rational functions over the chart variables.

An :class:`Expr` is a reduced fraction ``P/Q`` of polynomials with rational
coefficients.  The denominator is monic under graded lexicographic order and
``gcd(P, Q) = 1``, so two expressions are equal as rational functions exactly
when they are structurally equal.  Zero is always ``0/1``.

Source text follows this grammar::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' int)?
    base   := rational | ident | '(' expr ')'

``str(e)`` prints in the same grammar and re-parses to ``e``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from fstruct.poly import Poly, gcd


class ExprError(ValueError):
    pass


class ParseError(ExprError):
    def __init__(self, message: str, pos: int, source: str = ""):
        self.pos = pos
        self.source = source
        super().__init__(f"{message} at position {pos}")


class UnknownVariableError(ExprError):
    pass


class DivisionByZeroError(ExprError, ZeroDivisionError):
    pass


def _gens_of(chart) -> tuple[str, ...]:
    if hasattr(chart, "vars"):
        return tuple(chart.vars)
    if isinstance(chart, str):
        return (chart,)
    return tuple(chart)


class Expr:
    """Canonical rational function; immutable."""

    __slots__ = ("num", "den", "gens", "_hash")

    def __init__(self, num: Poly, den: Poly, gens: tuple[str, ...], *, _canonical=False):
        if not _canonical:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self.gens = gens
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c, gens) -> Expr:
        gens = _gens_of(gens)
        c = Fraction(c)
        n = len(gens)
        return cls(Poly.const(c, n), Poly.const(1, n), gens, _canonical=True)

    @classmethod
    def variable(cls, name: str, gens) -> Expr:
        gens = _gens_of(gens)
        if name not in gens:
            raise UnknownVariableError(f"unknown variable {name!r}; chart has {list(gens)}")
        n = len(gens)
        return cls(Poly.var(gens.index(name), n), Poly.const(1, n), gens, _canonical=True)

    @classmethod
    def from_polys(cls, num: Poly, den: Poly, gens) -> Expr:
        return cls(num, den, _gens_of(gens))

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num.terms

    def is_constant(self) -> bool:
        return self.num.is_const() and self.den.is_const()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ExprError(f"{self} is not constant")
        return Fraction(self.num.const_value())

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    @property
    def nvars(self) -> int:
        return len(self.gens)

    def _coerce(self, other) -> Expr | None:
        if isinstance(other, Expr):
            if other.gens == self.gens:
                return other
            if other.is_constant():
                return Expr.constant(other.constant_value(), self.gens)
            if self.is_constant():
                return None  # caller retries from the other side
            raise ExprError(f"mixed charts {self.gens} and {other.gens}")
        if isinstance(other, (int, Fraction)):
            return Expr.constant(other, self.gens)
        return NotImplemented

    # -- arithmetic -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.num.const_value() == other
        if not isinstance(other, Expr):
            return NotImplemented
        if self.gens != other.gens and not (self.is_constant() and other.is_constant()):
            return False
        return self.num.terms == other.num.terms and self.den.terms == other.den.terms

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash((self.gens, self.num, self.den))
        return self._hash

    def __neg__(self) -> Expr:
        return Expr(-self.num, self.den, self.gens, _canonical=True)

    def __pos__(self) -> Expr:
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other + self
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        if self.den == o.den:
            num = self.num + o.num
            if self.den.is_one():
                return Expr(num, self.den, self.gens, _canonical=True)
            return Expr(num, self.den, self.gens)
        g = gcd(self.den, o.den)
        d1 = self.den.exact_div(g) if not g.is_one() else self.den
        d2 = o.den.exact_div(g) if not g.is_one() else o.den
        num = self.num * d2 + o.num * d1
        return Expr(num, self.den * d2, self.gens)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return -(other - self)
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return other * self
        if not self.num.terms or not o.num.terms:
            return Expr.constant(0, self.gens)
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_one() and d.is_one():
            return Expr(a * c, b, self.gens, _canonical=True)
        g1 = gcd(a, d)
        g2 = gcd(c, b)
        if not g1.is_one():
            a, d = a.exact_div(g1), d.exact_div(g1)
        if not g2.is_one():
            c, b = c.exact_div(g2), b.exact_div(g2)
        return Expr(a * c, b * d, self.gens)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return Expr.constant(self.constant_value(), other.gens) / other
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def inverse(self) -> Expr:
        if not self.num.terms:
            raise DivisionByZeroError("division by an identically zero expression")
        return Expr(self.den, self.num, self.gens)

    def __pow__(self, k: int) -> Expr:
        if not isinstance(k, int):
            raise ExprError("exponent must be an integer")
        if k < 0:
            return self.inverse() ** (-k)
        return Expr(self.num ** k, self.den ** k, self.gens, _canonical=True)

    # -- calculus and evaluation -----------------------------------------

    def diff(self, var) -> Expr:
        """Exact partial derivative with respect to ``var`` (name or index)."""
        i = self._index(var)
        dn = self.num.deriv(i)
        if self.den.is_one():
            return Expr(dn, self.den, self.gens, _canonical=True)
        dd = self.den.deriv(i)
        return Expr(dn * self.den - self.num * dd, self.den * self.den, self.gens)

    def _index(self, var) -> int:
        if isinstance(var, int):
            if not 0 <= var < len(self.gens):
                raise UnknownVariableError(f"variable index {var} out of range")
            return var
        try:
            return self.gens.index(var)
        except ValueError:
            raise UnknownVariableError(f"unknown variable {var!r}; chart has {list(self.gens)}") from None

    def evaluate(self, point) -> Fraction:
        """Exact value at ``point`` (mapping name -> value, or a sequence)."""
        if isinstance(point, dict):
            point = [point[g] for g in self.gens]
        d = self.den.evaluate(point)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at {tuple(point)}")
        return self.num.evaluate(point) / d

    # -- printing ---------------------------------------------------------

    def __str__(self):
        num = _poly_str(self.num, self.gens)
        if self.den.is_one():
            return num
        den = _poly_str(self.den, self.gens)
        if len(self.num.terms) > 1:
            num = f"({num})"
        if len(self.den.terms) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"Expr({str(self)!r})"


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    n = num.nvars
    if not den.terms:
        raise DivisionByZeroError("division by an identically zero polynomial")
    if not num.terms:
        return num, Poly.const(1, n)
    if den.is_const():
        c = den.terms[0]
        return (num.scale(Fraction(1) / c) if c != 1 else num), Poly.const(1, n)
    g = gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.lc()
    if lc != 1:
        inv = Fraction(1) / lc
        num, den = num.scale(inv), den.scale(inv)
    return num, den


def _mono_str(exps, gens) -> str:
    parts = []
    for g, e in zip(gens, exps):
        if e == 1:
            parts.append(g)
        elif e:
            parts.append(f"{g}^{e}")
    return "*".join(parts)


def _poly_str(p: Poly, gens) -> str:
    if not p.terms:
        return "0"
    out = []
    for exps, c in p.items():
        c = Fraction(c)
        mono = _mono_str(exps, gens)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(f"-{body}" if c < 0 else body)
        else:
            out.append(f" - {body}" if c < 0 else f" + {body}")
    return "".join(out)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/^()])")


def _tokenize(source: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(source):
        if source[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", pos, source)
        num, ident, op = m.groups()
        if num is not None:
            if m.end() < len(source) and source[m.end()] == ".":
                raise ParseError("decimal literals are not supported; write p/q", m.end(), source)
            toks.append(("num", num, pos))
        elif ident is not None:
            toks.append(("ident", ident, pos))
        else:
            toks.append(("op", op, pos))
        pos = m.end()
    toks.append(("end", "", len(source)))
    return toks


class Node:
    """Parse tree node; ``op`` is one of num, var, neg, +, -, *, /, ^."""

    __slots__ = ("op", "args", "pos")

    def __init__(self, op: str, args: tuple, pos: int = 0):
        self.op = op
        self.args = args
        self.pos = pos

    def evaluate(self, point: dict) -> Fraction:
        """Direct numeric evaluation, independent of canonicalization."""
        op, a = self.op, self.args
        if op == "num":
            return a[0]
        if op == "var":
            return Fraction(point[a[0]])
        if op == "neg":
            return -a[0].evaluate(point)
        if op == "^":
            return a[0].evaluate(point) ** a[1]
        x, y = a[0].evaluate(point), a[1].evaluate(point)
        if op == "+":
            return x + y
        if op == "-":
            return x - y
        if op == "*":
            return x * y
        return x / y

    def to_expr(self, gens: tuple[str, ...]) -> Expr:
        op, a = self.op, self.args
        if op == "num":
            return Expr.constant(a[0], gens)
        if op == "var":
            if a[0] not in gens:
                raise UnknownVariableError(
                    f"unknown variable {a[0]!r} at position {self.pos}; chart has {list(gens)}"
                )
            return Expr.variable(a[0], gens)
        if op == "neg":
            return -a[0].to_expr(gens)
        if op == "^":
            base = a[0].to_expr(gens)
            if a[1] < 0 and base.is_zero():
                raise DivisionByZeroError(f"zero raised to a negative power at position {self.pos}")
            return base ** a[1]
        x, y = a[0].to_expr(gens), a[1].to_expr(gens)
        if op == "+":
            return x + y
        if op == "-":
            return x - y
        if op == "*":
            return x * y
        if y.is_zero():
            raise DivisionByZeroError(f"division by an identically zero expression at position {self.pos}")
        return x / y

    def __str__(self):
        op, a = self.op, self.args
        if op == "num":
            return str(a[0])
        if op == "var":
            return a[0]
        if op == "neg":
            return f"(-{a[0]})"
        if op == "^":
            return f"({a[0]})^{a[1]}"
        return f"({a[0]} {op} {a[1]})"


class _Parser:
    def __init__(self, source: str):
        self.source = source
        self.toks = _tokenize(source)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2], self.source)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            tok = self.take()
            node = Node(tok[1], (node, self.term()), tok[2])
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            node = Node(tok[1], (node, self.factor()), tok[2])
        return node

    def factor(self) -> Node:
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            return Node("neg", (self.factor(),), tok[2])
        node = self.base()
        if self.peek()[:2] == ("op", "^"):
            caret = self.take()
            sign = 1
            if self.peek()[:2] in (("op", "-"), ("op", "+")):
                sign = -1 if self.take()[1] == "-" else 1
            k = self.peek()
            if k[0] != "num":
                self.error("exponent must be an integer literal", k)
            self.take()
            if self.peek()[:2] == ("op", "^"):
                self.error("chained exponents need parentheses")
            node = Node("^", (node, sign * int(k[1])), caret[2])
        return node

    def base(self) -> Node:
        tok = self.take()
        kind, text, pos = tok
        if kind == "num":
            return Node("num", (Fraction(int(text)),), pos)
        if kind == "ident":
            return Node("var", (text,), pos)
        if tok[:2] == ("op", "("):
            node = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.error("expected ')'")
            self.take()
            return node
        if kind == "end":
            self.error("unexpected end of input", tok)
        self.error(f"unexpected {text!r}", tok)


def parse_tree(source: str) -> Node:
    """Parse ``source`` into an uncanonicalized tree."""
    return _Parser(source).parse()


def parse_expr(source: str, chart) -> Expr:
    """Parse ``source`` against the variables of ``chart`` (or a name list)."""
    return parse_tree(source).to_expr(_gens_of(chart))


def differentiate(e: Expr, v) -> Expr:
    return e.diff(v)


def is_zero(e: Expr) -> bool:
    return e.is_zero()


def as_expr(value, gens: Sequence[str]) -> Expr:
    """Coerce a string, number or Expr to an Expr over ``gens``."""
    gens = _gens_of(gens)
    if isinstance(value, Expr):
        if value.gens == gens:
            return value
        if value.is_constant():
            return Expr.constant(value.constant_value(), gens)
        raise ExprError(f"expression over {value.gens} used on chart {gens}")
    if isinstance(value, str):
        return parse_expr(value, gens)
    if isinstance(value, (int, Fraction)):
        return Expr.constant(value, gens)
    raise TypeError(f"cannot interpret {value!r} as an expression")


def expr_sum(items: Iterable[Expr], gens) -> Expr:
    total = Expr.constant(0, gens)
    for e in items:
        total = total + e
    return total
