"""Text syntax for ring specs, coefficient-algebra literals and ZR elements.

Ring specs::

    gf(p)                 prime field
    gf(q)                 built-in modulus for q in {4, 8, 9, 16, 25, 27}
    gf(q,x^2+x+1)         explicit monic modulus in one variable
    perfect(p;t[,u...])   perfect closure of F_p[t, u, ...]

Coefficient literals are sums of products of integers and generators with
integer or ``(a/p^k)`` exponents, e.g. ``g^2+1`` or ``t^(1/2)+t``.
ZR literals are ``term (('+'|'-') term)*`` with
``term := INT | INT '*' '[' literal ']' | '[' literal ']'``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .monoid_algebra import MonoidAlgebraElement
from .perfect import FiniteField, finite_field, perfect_closure, prime_power

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(src):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(src)))
    return tokens


class _Parser:
    def __init__(self, src):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, self.src, tok[2])

    def accept(self, kind, value=None):
        t = self.tok
        if t[0] == kind and (value is None or t[1] == value):
            self.i += 1
            return t
        return None

    def expect(self, kind, value=None):
        t = self.accept(kind, value)
        if t is None:
            want = value if value is not None else kind
            got = self.tok[1] if self.tok[0] != "end" else "end of input"
            self.error(f"expected {want!r}, found {got!r}")
        return t

    def done(self):
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")


class _CoeffParser(_Parser):
    def __init__(self, src, ctx):
        super().__init__(src)
        self.ctx = ctx

    def expr(self):
        neg = bool(self.accept("op", "-"))
        if not neg:
            self.accept("op", "+")
        acc = self.term()
        if neg:
            acc = -acc
        while True:
            if self.accept("op", "+"):
                acc = acc + self.term()
            elif self.accept("op", "-"):
                acc = acc - self.term()
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.accept("op", "*"):
            acc = acc * self.factor()
        return acc

    def exponent(self):
        if t := self.accept("int"):
            return Fraction(t[1])
        start = self.expect("op", "(")
        num = self.expect("int")[1]
        den = 1
        if self.accept("op", "/"):
            den = self.expect("int")[1]
            if den == 0:
                self.error("zero denominator", start)
        self.expect("op", ")")
        return Fraction(num, den)

    def factor(self):
        ctx = self.ctx
        t = self.tok
        if self.accept("int"):
            return ctx.from_int(t[1])
        if self.accept("op", "("):
            val = self.expr()
            self.expect("op", ")")
            if self.accept("op", "^"):
                val = val ** self.expect("int")[1]
            return val
        if self.accept("name"):
            name = t[1]
            if name not in ctx.generator_names:
                self.error(f"unknown generator {name!r} for {ctx.spec}", t)
            if not self.accept("op", "^"):
                return ctx.generator(name)
            etok = self.tok
            e = self.exponent()
            if e.denominator == 1:
                return ctx.generator(name) ** e.numerator
            if isinstance(ctx, FiniteField):
                self.error("fractional exponents need a perfect closure", etok)
            exps = [Fraction(0)] * len(ctx.names)
            exps[ctx.names.index(name)] = e
            try:
                return ctx.monomial(exps)
            except ValueError as exc:
                self.error(str(exc), etok)
        self.error(f"unexpected {t[1]!r}" if t[0] != "end" else "unexpected end of input")


def parse_coefficient(src: str, ctx):
    """Parse a literal of the coefficient algebra."""
    parser = _CoeffParser(src, ctx)
    value = parser.expr()
    parser.done()
    return value


def parse_element(src: str, ctx) -> MonoidAlgebraElement:
    """Parse a ZR literal such as ``2*[g^2] - [1] + [0]``."""
    parser = _CoeffParser(src, ctx)
    acc = MonoidAlgebraElement(ctx)
    sign = -1 if parser.accept("op", "-") else 1
    while True:
        t = parser.tok
        if parser.accept("int"):
            coeff = t[1]
            if parser.accept("op", "*"):
                parser.expect("op", "[")
                term = MonoidAlgebraElement(ctx, {_bracket_body(parser): coeff})
            else:
                term = MonoidAlgebraElement.integer(ctx, coeff)
        elif parser.accept("op", "["):
            term = MonoidAlgebraElement(ctx, {_bracket_body(parser): 1})
        else:
            parser.error("expected an integer or '['")
        acc = acc + term * sign
        if parser.accept("op", "+"):
            sign = 1
        elif parser.accept("op", "-"):
            sign = -1
        else:
            parser.done()
            return acc


def _bracket_body(parser):
    value = parser.expr()
    parser.expect("op", "]")
    return value


def _poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return out


def _poly_add(a, b, sign=1):
    out = dict(a)
    for i, y in b.items():
        out[i] = out.get(i, 0) + sign * y
    return out


class _ModulusParser(_Parser):
    """Univariate integer polynomial; the variable name is free but unique."""

    def __init__(self, src):
        super().__init__(src)
        self.var = None

    def expr(self):
        sign = -1 if self.accept("op", "-") else 1
        acc = _poly_add({}, self.term(), sign)
        while True:
            if self.accept("op", "+"):
                acc = _poly_add(acc, self.term())
            elif self.accept("op", "-"):
                acc = _poly_add(acc, self.term(), -1)
            else:
                return acc

    def term(self):
        acc = self.factor()
        while self.accept("op", "*"):
            acc = _poly_mul(acc, self.factor())
        return acc

    def factor(self):
        t = self.tok
        if self.accept("int"):
            return {0: t[1]}
        if self.accept("name"):
            if self.var not in (None, t[1]):
                self.error("modulus must use a single variable", t)
            self.var = t[1]
            base = {1: 1}
        elif self.accept("op", "("):
            base = self.expr()
            self.expect("op", ")")
        else:
            self.error("expected a term of the modulus")
        if self.accept("op", "^"):
            k = self.expect("int")[1]
            out = {0: 1}
            for _ in range(k):
                out = _poly_mul(out, base)
            return out
        return base


def _parse_modulus(src, p):
    parser = _ModulusParser(src)
    poly = parser.expr()
    parser.done()
    poly = {d: c % p for d, c in poly.items() if c % p}
    top = max(poly, default=0)
    return tuple(poly.get(i, 0) for i in range(top + 1))


_GF = re.compile(r"\s*gf\s*\(\s*(\d+)\s*(?:,(.*))?\)\s*$")
_PERFECT = re.compile(r"\s*perfect\s*\(\s*(\d+)\s*;(.*)\)\s*$")


def parse_ring(spec: str):
    """Parse a ring spec into a FiniteField or PerfectClosure context."""
    m = _GF.match(spec)
    if m:
        q = int(m.group(1))
        try:
            if m.group(2) is None:
                return finite_field(q)
            p, _ = prime_power(q)
            try:
                modulus = _parse_modulus(m.group(2), p)
            except ParseError as exc:
                raise ParseError(exc.message, spec, m.start(2) + exc.position) from None
            return finite_field(q, modulus)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(f"invalid ring {spec!r}: {exc}") from None
    m = _PERFECT.match(spec)
    if m:
        names = tuple(n.strip() for n in m.group(2).split(","))
        try:
            return perfect_closure(int(m.group(1)), *names)
        except ValueError as exc:
            raise ParseError(f"invalid ring {spec!r}: {exc}") from None
    raise ParseError(f"unrecognized ring spec {spec!r}; expected gf(p), gf(q,modulus) "
                     "or perfect(p;t,...)")
