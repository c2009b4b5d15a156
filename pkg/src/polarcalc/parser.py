"""Text format for polynomials and arcs.

Polynomials are written in ``x`` and ``y`` with rational or Gaussian
rational coefficients (``i`` is the imaginary unit). Arcs are written
``x = <series in y>`` with rational exponents on ``y`` and an optional
trailing ``+ O(y^(p/q))`` marking a truncation.

The parser is a small recursive descent over the grammar::

    expr     := [sign] term (sign term)*
    term     := factor (('*' | '/') factor | factor)*      # juxtaposition multiplies
    factor   := primary ['^' exponent]
    primary  := NUMBER | 'x' | 'y' | 'i' | '(' expr ')'
    exponent := ['-'] INTEGER | '(' ['-'] INTEGER ['/' INTEGER] ')'

Division is only allowed by nonzero constants.
"""

from __future__ import annotations

import re
from fractions import Fraction

import mpmath

from .errors import ExpressionSyntaxError, FractionalExponentInPolynomial, NegativeExponent
from .numbers import INF, GaussRat, is_exact
from .poly import BivarPoly
from .series import PuiseuxSeries

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)|(?P<op>[-+*/^()=])|(?P<id>[A-Za-z]))"
)
_ONE = GaussRat(1)


class _Tok:
    __slots__ = ("kind", "text", "offset")

    def __init__(self, kind, text, offset):
        self.kind = kind
        self.text = text
        self.offset = offset

    def __repr__(self):
        return f"_Tok({self.kind}, {self.text!r}, {self.offset})"


def _tokenize(text):
    toks = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", _byte(text, pos), ("number", "x", "y", "i", "(", "+", "-"))
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        val = m.group(kind)
        if kind == "id" and val not in ("x", "y", "i", "O"):
            raise ExpressionSyntaxError(f"unknown symbol {val!r}", _byte(text, start), ("x", "y", "i"))
        toks.append(_Tok(kind, val, _byte(text, start)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte(text, n)))
    return toks


def _byte(text, pos):
    return len(text[:pos].encode("utf-8"))


# Values during parsing: dict (x_exp: int, y_exp: Fraction) -> GaussRat
def _const(c):
    return {(0, Fraction(0)): c} if c else {}


def _add(a, b, sign=1):
    out = dict(a)
    for k, c in b.items():
        v = out.get(k, GaussRat(0)) + (c if sign > 0 else -c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


def _mul(a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            v = out.get(k, GaussRat(0)) + c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _is_const(v):
    return all(k == (0, 0) for k in v)


class _Parser:
    def __init__(self, text, allow_rational_y):
        self.text = text
        self.toks = _tokenize(text)
        self.pos = 0
        self.allow_rational_y = allow_rational_y

    @property
    def tok(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg, expected):
        raise ExpressionSyntaxError(msg, self.tok.offset, expected)

    def expect(self, text):
        if self.tok.text != text or self.tok.kind == "end":
            self.fail(f"unexpected {self._describe()}", (repr(text),))
        return self.next()

    def _describe(self):
        return "end of input" if self.tok.kind == "end" else repr(self.tok.text)

    def at_term_end(self):
        return self.tok.kind == "end" or self.tok.text in ("+", "-", ")", "=")

    # expr := [sign] term (sign term)*
    def expr(self, stop_at_big_o=False):
        sign = 1
        if self.tok.text in ("+", "-"):
            sign = -1 if self.next().text == "-" else 1
        value = self.term()
        if sign < 0:
            value = _add({}, value, -1)
        while self.tok.text in ("+", "-"):
            if stop_at_big_o and self.toks[self.pos + 1].text == "O":
                break
            op = self.next().text
            value = _add(value, self.term(), 1 if op == "+" else -1)
        return value

    def term(self):
        value = self.factor()
        while not self.at_term_end():
            if self.tok.text == "*":
                self.next()
                value = _mul(value, self.factor())
            elif self.tok.text == "/":
                off = self.next().offset
                d = self.factor()
                if not _is_const(d) or not d:
                    raise ExpressionSyntaxError("division by a non-constant or zero", off, ("nonzero constant",))
                value = _mul(value, _const(d[(0, Fraction(0))].inverse()))
            elif self.tok.kind in ("num", "id") or self.tok.text == "(":
                value = _mul(value, self.factor())
            else:
                self.fail(f"unexpected {self._describe()}", ("+", "-", "*", "/", "^", ")", "end of input"))
        return value

    def factor(self):
        start = self.tok
        base = self.primary()
        if self.tok.text != "^":
            return base
        self.next()
        e = self.exponent()
        if e.denominator == 1:
            k = int(e)
            out = _const(_ONE)
            for _ in range(k):
                out = _mul(out, base)
            return out
        # rational power: only y^(p/q) in arcs
        if not self.allow_rational_y:
            raise FractionalExponentInPolynomial(f"fractional exponent {e} at byte {start.offset} is not allowed in a polynomial")
        if start.text != "y" or base != {(0, Fraction(1)): _ONE}:
            raise ExpressionSyntaxError("fractional exponents apply only to y", start.offset, ("y",))
        return {(0, e): _ONE}

    def exponent(self):
        off = self.tok.offset
        paren = self.tok.text == "("
        if paren:
            self.next()
        neg = False
        if self.tok.text == "-":
            self.next()
            neg = True
        elif self.tok.text == "+":
            self.next()
        if self.tok.kind != "num":
            self.fail(f"unexpected {self._describe()}", ("integer exponent",))
        num = Fraction(self.next().text)
        if paren and self.tok.text == "/":
            self.next()
            if self.tok.kind != "num":
                self.fail(f"unexpected {self._describe()}", ("integer",))
            den = Fraction(self.next().text)
            if den == 0:
                raise ExpressionSyntaxError("zero denominator in exponent", off, ("nonzero integer",))
            num = num / den
        if paren:
            self.expect(")")
        if neg and num != 0:
            raise NegativeExponent(f"negative exponent {-num} at byte {off}")
        return num

    def primary(self):
        t = self.tok
        if t.kind == "num":
            self.next()
            return _const(GaussRat(Fraction(t.text)))
        if t.kind == "id":
            self.next()
            if t.text == "x":
                return {(1, Fraction(0)): _ONE}
            if t.text == "y":
                return {(0, Fraction(1)): _ONE}
            if t.text == "i":
                return _const(GaussRat(0, 1))
            raise ExpressionSyntaxError("'O' is only allowed as a trailing truncation marker", t.offset, ("x", "y", "i"))
        if t.text == "(":
            self.next()
            v = self.expr()
            self.expect(")")
            return v
        self.fail(f"unexpected {self._describe()}", ("number", "x", "y", "i", "("))

    def finish(self):
        if self.tok.kind != "end":
            self.fail(f"unexpected {self._describe()}", ("+", "-", "*", "/", "end of input"))


def parse_poly(text: str) -> BivarPoly:
    """Parse a polynomial in ``x, y``."""
    p = _Parser(text, allow_rational_y=False)
    if p.tok.kind == "end":
        p.fail("empty expression", ("number", "x", "y", "i", "("))
    value = p.expr()
    p.finish()
    return BivarPoly({(i, int(j)): c for (i, j), c in value.items()})


def parse_arc(text: str) -> PuiseuxSeries:
    """Parse ``x = <series in y> [+ O(y^(p/q))]``."""
    p = _Parser(text, allow_rational_y=True)
    if not (p.tok.text == "x" and p.toks[1].text == "="):
        p.fail(f"unexpected {p._describe()}", ("'x ='",))
    p.next()
    p.next()
    if p.tok.kind == "end":
        p.fail("empty arc", ("number", "y", "i", "("))
    trunc = INF
    if p.tok.text == "O":
        value = {}
    else:
        value = p.expr(stop_at_big_o=True)
    if p.tok.text == "+" and p.toks[p.pos + 1].text == "O":
        p.next()
    if p.tok.text == "O":
        p.next()
        p.expect("(")
        ytok = p.tok
        t = p.factor()
        if len(t) != 1 or next(iter(t.values())) != 1 or next(iter(t))[0] != 0:
            raise ExpressionSyntaxError("truncation marker must be O(y^e)", ytok.offset, ("y",))
        trunc = next(iter(t))[1]
        p.expect(")")
    p.finish()
    terms = []
    for (i, j), c in value.items():
        if i:
            raise ExpressionSyntaxError("an arc is a series in y; x may not appear on the right-hand side", p.toks[2].offset, ("y",))
        terms.append((j, c))
    return PuiseuxSeries(terms, trunc)


# ---------------------------------------------------------------- output
APPROX_DIGITS = 20


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q)


def _approx_real(v):
    s = mpmath.nstr(v, APPROX_DIGITS, strip_zeros=True)
    return s


def format_coeff(c) -> str:
    """Canonical text for a coefficient (parenthesised when a sum)."""
    if is_exact(c):
        re_, im_ = c.re, c.im
        if not im_:
            return str(re_)
        imag = _imag_text(im_)
        if not re_:
            return imag
        return f"({re_}{'' if imag.startswith('-') else '+'}{imag})"
    re_ = c.real
    im_ = c.imag
    # a part far below the printed digits is round-off, not signal
    size = abs(c) * mpmath.mpf(10) ** -(2 * APPROX_DIGITS)
    if abs(re_) < size:
        re_ = 0
    if abs(im_) < size:
        im_ = 0
    if im_ == 0:
        return _approx_real(re_)
    imag = _approx_real(im_) + "*i"
    if re_ == 0:
        return imag
    return f"({_approx_real(re_)}{'' if imag.startswith('-') else '+'}{imag})"


def _imag_text(q):
    if q == 1:
        return "i"
    if q == -1:
        return "-i"
    return f"{q}*i"


def _term_text(coeff, mono):
    """``coeff * mono`` where ``mono`` is a (possibly empty) product string."""
    if not mono:
        return format_coeff(coeff)
    if is_exact(coeff):
        if coeff == 1:
            return mono
        if coeff == -1:
            return "-" + mono
    return f"{format_coeff(coeff)}*{mono}"


def _y_power(e):
    e = Fraction(e)
    if e == 0:
        return ""
    if e == 1:
        return "y"
    if e.denominator == 1:
        return f"y^{e.numerator}"
    return f"y^({e})"


def _x_power(i):
    if i == 0:
        return ""
    if i == 1:
        return "x"
    return f"x^{i}"


def _join(parts):
    if not parts:
        return "0"
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


def format_poly(f: BivarPoly) -> str:
    parts = []
    for (i, j), c in f.items():
        mono = "*".join(s for s in (_x_power(i), _y_power(j)) if s)
        parts.append(_term_text(c, mono))
    return _join(parts)


def format_series(s: PuiseuxSeries) -> str:
    """Right-hand side of an arc, with ``+ O(y^e)`` when truncated."""
    parts = [_term_text(c, _y_power(e)) for e, c in s.terms]
    if s.trunc is not INF:
        t = _y_power(s.trunc) or "1"
        if not parts:
            return f"O({t})"
        parts.append(f"O({t})")
    return _join(parts)


def format_arc(s: PuiseuxSeries) -> str:
    return "x = " + format_series(s)


__all__ = [
    "parse_poly",
    "parse_arc",
    "format_poly",
    "format_series",
    "format_arc",
    "format_coeff",
    "format_rational",
]
