"""Truncated Puiseux series in ``y`` with a common exponent denominator."""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import IndeterminateContact, TruncationTooShallow
from .numbers import INF, GaussRat, as_coeff, is_exact, is_zero, magnitude


def _accumulate(contribs):
    """Sum ``(value, scale)`` pairs; approximate sums below tolerance vanish."""
    total = None
    scale = None
    for v, s in contribs:
        total = v if total is None else total + v
        if not isinstance(v, GaussRat):
            sv = s if s is not None else abs(v)
            scale = sv if scale is None or sv > scale else scale
    if total is None:
        return None
    if isinstance(total, GaussRat):
        return total if total else None
    if scale is None:
        scale = abs(total)
    if abs(total) <= total.context.tol * scale:
        return None
    return total


class PuiseuxSeries:
    """Finite sum ``sum c_k y^(k/N)`` known exactly below ``trunc``.

    ``trunc`` is INF for an exact (finite) series; otherwise coefficients at
    exponents ``>= trunc`` are unknown.
    """

    __slots__ = ("denom", "_c", "trunc")

    def __init__(self, terms=(), trunc=INF):
        trunc = trunc if trunc is INF else Fraction(trunc)
        cleaned = {}
        for e, c in terms:
            e = Fraction(e)
            if e < 0:
                raise ValueError("Puiseux exponents must be non-negative")
            c = as_coeff(c)
            if trunc is not INF and e >= trunc:
                continue
            if is_zero(c):
                continue
            cleaned[e] = cleaned[e] + c if e in cleaned else c
        cleaned = {e: c for e, c in cleaned.items() if not is_zero(c)}
        n = 1
        for e in cleaned:
            n = lcm(n, e.denominator)
        self.denom = n
        self._c = tuple(sorted((int(e * n), c) for e, c in cleaned.items()))
        self.trunc = trunc

    @classmethod
    def _raw(cls, denom, items, trunc):
        obj = object.__new__(cls)
        n = 1
        for k, _ in items:
            g = denom // _gcd(k, denom) if k else 1
            n = lcm(n, g)
        if n != denom:
            f = denom // n
            items = [(k // f, c) for k, c in items]
        obj.denom = n
        obj._c = tuple(sorted(items, key=lambda kc: kc[0]))
        obj.trunc = trunc
        return obj

    @classmethod
    def monomial(cls, coeff, exponent):
        return cls([(exponent, coeff)])

    @classmethod
    def zero(cls, trunc=INF):
        return cls((), trunc)

    # -- views
    @property
    def terms(self):
        return tuple((Fraction(k, self.denom), c) for k, c in self._c)

    def exponents(self):
        return [Fraction(k, self.denom) for k, _ in self._c]

    def coefficient(self, e):
        e = Fraction(e)
        if self.trunc is not INF and e >= self.trunc:
            raise TruncationTooShallow(f"coefficient at y^{e} lies beyond truncation {self.trunc}")
        k = e * self.denom
        if k.denominator != 1:
            return GaussRat(0)
        for kk, c in self._c:
            if kk == k:
                return c
        return GaussRat(0)

    def is_exact(self):
        return all(is_exact(c) for _, c in self._c)

    def is_finite(self):
        return self.trunc is INF

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def order(self):
        """Smallest stored exponent; INF for the exact zero series."""
        if self._c:
            return Fraction(self._c[0][0], self.denom)
        if self.trunc is INF:
            return INF
        raise TruncationTooShallow(f"series vanishes below its truncation {self.trunc}")

    def valuation_bound(self):
        """Certified lower bound for the order of the underlying series."""
        if self._c:
            return Fraction(self._c[0][0], self.denom)
        return self.trunc

    def max_exponent(self):
        return Fraction(self._c[-1][0], self.denom) if self._c else Fraction(0)

    # -- structural ops
    def truncate(self, t):
        t = t if t is INF else Fraction(t)
        if t is not INF and (self.trunc is INF or t < self.trunc):
            return PuiseuxSeries([(e, c) for e, c in self.terms if e < t], t)
        return self

    def finite(self):
        """Same terms, read as an exact finite arc."""
        return PuiseuxSeries._raw(self.denom, list(self._c), INF)

    def prefix_below(self, rho):
        rho = Fraction(rho)
        return PuiseuxSeries([(e, c) for e, c in self.terms if e < rho])

    def add_term(self, exponent, coeff):
        return self + PuiseuxSeries.monomial(coeff, exponent)

    def map_coeffs(self, fn):
        return PuiseuxSeries([(e, fn(c)) for e, c in self.terms], self.trunc)

    def shift(self, e):
        """Multiply by ``y^e``."""
        e = Fraction(e)
        return PuiseuxSeries([(x + e, c) for x, c in self.terms], self.trunc + e)

    # -- ring ops
    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries([(0, other)])
        t = min(self.trunc, other.trunc)
        n = lcm(self.denom, other.denom)
        acc = {}
        for s in (self, other):
            f = n // s.denom
            for k, c in s._c:
                acc.setdefault(k * f, []).append((c, None))
        items = []
        for k, cs in acc.items():
            if t is not INF and Fraction(k, n) >= t:
                continue
            v = _accumulate(cs)
            if v is not None:
                items.append((k, v))
        return PuiseuxSeries._raw(n, items, t)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries._raw(self.denom, [(k, -c) for k, c in self._c], self.trunc)

    def __sub__(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries([(0, other)])
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, coeff):
        coeff = as_coeff(coeff)
        if is_zero(coeff):
            return PuiseuxSeries.zero(self.trunc)
        return PuiseuxSeries._raw(self.denom, [(k, coeff * c) for k, c in self._c], self.trunc)

    def mul(self, other, cap=INF):
        """Product, computed only below ``cap``."""
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other).truncate(cap)
        t = min(self.trunc + other.valuation_bound(), other.trunc + self.valuation_bound(), cap)
        n = lcm(self.denom, other.denom)
        fa, fb = n // self.denom, n // other.denom
        tk = None if t is INF else t * n
        acc = {}
        for ka, ca in self._c:
            ka *= fa
            for kb, cb in other._c:
                k = ka + kb * fb
                if tk is not None and k >= tk:
                    break
                acc.setdefault(k, []).append((ca * cb, None))
        items = []
        for k, cs in acc.items():
            v = _accumulate(cs)
            if v is not None:
                items.append((k, v))
        return PuiseuxSeries._raw(n, items, t)

    def __mul__(self, other):
        return self.mul(other)

    __rmul__ = __mul__

    def power(self, k, cap=INF):
        result = PuiseuxSeries([(0, 1)])
        for _ in range(k):
            result = result.mul(self, cap)
        return result

    # -- numerics
    def evaluate(self, t, ctx):
        """Value at real ``t > 0`` (principal real roots of ``t``)."""
        t = ctx.mpf(t)
        total = ctx.mpc(0)
        for e, c in self.terms:
            cc = c.to_mpc(ctx) if isinstance(c, GaussRat) else ctx.mpc(c)
            total += cc * ctx.power(t, ctx.mpf(e.numerator) / e.denominator)
        return total

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.denom == other.denom and self._c == other._c and self.trunc == other.trunc

    def __hash__(self):
        return hash((self.denom, tuple((k, _chash(c)) for k, c in self._c), self.trunc))

    def __repr__(self):
        from .parser import format_series

        return f"PuiseuxSeries({format_series(self)!r})"


def _chash(c):
    if isinstance(c, GaussRat):
        return hash(c)
    return hash(complex(c))


def _gcd(a, b):
    from math import gcd

    return gcd(a, b)


def series_order(s: PuiseuxSeries):
    return s.order()


def contact_order(s1: PuiseuxSeries, s2: PuiseuxSeries):
    """Order of ``s1 - s2``; INF only for identical exact series."""
    d = s1 - s2
    if d._c:
        return d.order()
    if d.trunc is INF:
        return INF
    raise IndeterminateContact(
        f"series agree up to their common truncation {d.trunc}; expand further"
    )


def magnitude_of(s: PuiseuxSeries):
    return max((magnitude(c) for _, c in s._c), default=0.0)
