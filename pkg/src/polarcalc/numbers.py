"""Number tower: exact Gaussian rationals, approximate complex floats and
extended rationals (rationals plus an absorbing infinity).

Exact arithmetic uses :class:`GaussRat`. Approximate values are ``mpc``
instances of an :class:`ApproxField`, which fixes the working precision and
the relative zero tolerance. Mixing the two yields an approximate value.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath.libmp import from_rational


class Infinity:
    """The order of the zero series; greater than every rational."""

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("polarcalc.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()


def is_inf(v) -> bool:
    return v is INF


def format_ext(v) -> str:
    """Render a rational or INF as ``"p/q"`` / ``"inf"``."""
    if v is INF:
        return "inf"
    return str(Fraction(v))


class GaussRat:
    """Exact Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _new(cls, re, im):
        obj = object.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    # -- coercion helpers
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat._new(Fraction(other), _ZERO)
        if isinstance(other, Rational):
            return GaussRat._new(Fraction(other.numerator, other.denominator), _ZERO)
        return None

    def to_mpc(self, ctx):
        re = ctx.mpf(self.re.numerator) / self.re.denominator
        im = ctx.mpf(self.im.numerator) / self.im.denominator
        return ctx.mpc(re, im)

    def _mpmath_(self, prec, rounding):
        # round at the precision the converting context asks for
        re = from_rational(self.re.numerator, self.re.denominator, prec, rounding)
        im = from_rational(self.im.numerator, self.im.denominator, prec, rounding)
        return mpmath.mp.make_mpc((re, im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    # -- arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return self.to_mpc(other.context) + other
            return NotImplemented
        return GaussRat._new(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return self.to_mpc(other.context) - other
            return NotImplemented
        return GaussRat._new(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return other - self.to_mpc(other.context)
            return NotImplemented
        return GaussRat._new(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return self.to_mpc(other.context) * other
            return NotImplemented
        if not self.im and not o.im:
            return GaussRat._new(self.re * o.re, _ZERO)
        return GaussRat._new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return self.to_mpc(other.context) / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if hasattr(other, "_mpc_"):
                return other / self.to_mpc(other.context)
            return NotImplemented
        return o * self.inverse()

    def inverse(self):
        if not self.im:
            return GaussRat._new(1 / self.re, _ZERO)
        n = self.re * self.re + self.im * self.im
        return GaussRat._new(self.re / n, -self.im / n)

    def __neg__(self):
        return GaussRat._new(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussRat._new(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return not self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return f"GaussRat({self.re})"
        return f"GaussRat({self.re}, {self.im})"


_ZERO = Fraction(0)
ZERO = GaussRat(0)
ONE = GaussRat(1)
I = GaussRat(0, 1)


class ApproxField(mpmath.MPContext):
    """mpmath context with a fixed precision and a relative zero tolerance.

    A value ``z`` counts as zero when ``|z| <= tol * S`` for the largest
    magnitude ``S`` involved in producing it.
    """

    def __init__(self, prec: int = 256, tol=None):
        super().__init__()
        self.prec = prec
        self.bits = prec
        if tol is None:
            tol = self.mpf(2) ** (-(prec // 2))
        self.tol = self.mpf(tol)

    def __repr__(self):
        return f"ApproxField(prec={self.bits}, tol={mpmath.nstr(self.tol, 5)})"


@functools.lru_cache(maxsize=None)
def approx_field(prec: int = 256, tol_exponent10: int | None = None) -> ApproxField:
    """Shared field instance for a (precision, tolerance) pair."""
    if tol_exponent10 is None:
        return ApproxField(prec)
    return ApproxField(prec, mpmath.mpf(10) ** (-tol_exponent10))


DEFAULT_FIELD = approx_field(256)


def as_coeff(v):
    """Normalize ints/Fractions to GaussRat; leave GaussRat and mpc alone."""
    if isinstance(v, GaussRat):
        return v
    if isinstance(v, (int, Fraction)):
        return GaussRat._new(Fraction(v), _ZERO)
    if hasattr(v, "_mpc_"):
        return v
    if hasattr(v, "_mpf_"):
        return v.context.mpc(v)
    raise TypeError(f"not a coefficient: {v!r}")


def is_exact(c) -> bool:
    return isinstance(c, GaussRat)


def magnitude(c):
    """|c| as an mpf (approx) or float-free Fraction bound (exact)."""
    if isinstance(c, GaussRat):
        return abs(complex(c))
    return abs(c)


def is_zero(c, scale=None) -> bool:
    """Zero test. Exact values compare to 0; approximate values use the
    field's relative tolerance against ``scale`` (default: exact zero only)."""
    if isinstance(c, GaussRat):
        return not c
    if scale is None:
        return c == 0
    return abs(c) <= c.context.tol * scale


def is_real_coeff(c, scale=None) -> bool:
    if isinstance(c, GaussRat):
        return not c.im
    s = abs(c) if scale is None else scale
    return abs(c.imag) <= c.context.tol * s


def to_complex(c) -> complex:
    return complex(c)


def to_mpc(c, ctx):
    if isinstance(c, GaussRat):
        return c.to_mpc(ctx)
    return ctx.mpc(c)


def real_part_coeff(c):
    if isinstance(c, GaussRat):
        return GaussRat._new(c.re, _ZERO)
    return c.context.mpc(c.real, 0)
