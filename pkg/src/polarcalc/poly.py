"""Bivariate polynomials in ``x, y`` over the coefficient tower."""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .numbers import GaussRat, as_coeff, is_exact, is_zero


class BivarPoly:
    """Sparse polynomial ``sum c_ij x^i y^j`` with no zero coefficients stored."""

    __slots__ = ("_m", "_hash")

    def __init__(self, monomials=None):
        m = {}
        if monomials:
            items = monomials.items() if hasattr(monomials, "items") else monomials
            for (i, j), c in items:
                if i < 0 or j < 0:
                    raise ValueError("monomial exponents must be non-negative")
                c = as_coeff(c)
                key = (int(i), int(j))
                m[key] = m[key] + c if key in m else c
        self._m = {k: c for k, c in m.items() if not is_zero(c)}
        self._hash = None

    @classmethod
    def x(cls):
        return cls({(1, 0): 1})

    @classmethod
    def y(cls):
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c):
        return cls({(0, 0): c})

    # -- views
    @property
    def monomials(self):
        return dict(self._m)

    def items(self):
        return sorted(self._m.items(), key=lambda kv: (kv[0][0] + kv[0][1], -kv[0][0]))

    def coeff(self, i, j):
        return self._m.get((i, j), GaussRat(0))

    def is_zero(self):
        return not self._m

    def is_exact(self):
        return all(is_exact(c) for c in self._m.values())

    def is_real(self):
        return all(is_exact(c) and not c.im for c in self._m.values())

    def degree(self):
        return max((i + j for i, j in self._m), default=-1)

    def order(self):
        """Lowest total degree of the support (multiplicity at the origin)."""
        return min((i + j for i, j in self._m), default=-1)

    def x_degree(self):
        return max((i for i, _ in self._m), default=-1)

    def y_degree(self):
        return max((j for _, j in self._m), default=-1)

    def homogeneous_part(self, k):
        return BivarPoly({(i, j): c for (i, j), c in self._m.items() if i + j == k})

    def is_mini_regular(self):
        """True when ``x^m`` appears in the lowest homogeneous part."""
        m = self.order()
        return m >= 0 and (m, 0) in self._m

    def x_coeffs(self):
        """Coefficients of ``x^i`` as ``{j: c}`` dicts, index ``i``."""
        out = [dict() for _ in range(self.x_degree() + 1)]
        for (i, j), c in self._m.items():
            out[i][j] = c
        return out

    # -- arithmetic
    def __add__(self, other):
        other = _lift(other)
        m = dict(self._m)
        for k, c in other._m.items():
            m[k] = m[k] + c if k in m else c
        return BivarPoly(m)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({k: -c for k, c in self._m.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        m = {}
        for (i1, j1), c1 in self._m.items():
            for (i2, j2), c2 in other._m.items():
                k = (i1 + i2, j1 + j2)
                v = c1 * c2
                m[k] = m[k] + v if k in m else v
        return BivarPoly(m)

    __rmul__ = __mul__

    def __pow__(self, k):
        result = BivarPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def scale(self, c):
        c = as_coeff(c)
        return BivarPoly({k: c * v for k, v in self._m.items()})

    def diff_x(self):
        return BivarPoly({(i - 1, j): i * c for (i, j), c in self._m.items() if i})

    def diff_y(self):
        return BivarPoly({(i, j - 1): j * c for (i, j), c in self._m.items() if j})

    def flip_y(self):
        """``f(x, -y)``."""
        return BivarPoly({(i, j): (-c if j % 2 else c) for (i, j), c in self._m.items()})

    def shear(self, c):
        """``f(x, y + c*x)``."""
        c = as_coeff(c)
        if is_zero(c):
            return self
        m = {}
        for (i, j), a in self._m.items():
            # (y + c x)^j = sum_k C(j,k) c^k x^k y^(j-k)
            ck = GaussRat(1)
            for k in range(j + 1):
                key = (i + k, j - k)
                v = a * ck * comb(j, k)
                m[key] = m[key] + v if key in m else v
                ck = ck * c
        return BivarPoly(m)

    def evaluate(self, x, y):
        total = 0
        for (i, j), c in self._m.items():
            total = total + c * x**i * y**j
        return total

    def eval_numeric(self, x, y, ctx):
        total = ctx.mpc(0)
        for (i, j), c in self._m.items():
            cc = c.to_mpc(ctx) if isinstance(c, GaussRat) else c
            total += cc * x**i * y**j
        return total

    # -- comparison
    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            try:
                other = _lift(other)
            except TypeError:
                return NotImplemented
        return self._m == other._m

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset((k, hash(v) if is_exact(v) else hash(complex(v))) for k, v in self._m.items()))
        return self._hash

    def __repr__(self):
        from .parser import format_poly

        return f"BivarPoly({format_poly(self)!r})"


def _lift(v):
    if isinstance(v, BivarPoly):
        return v
    if isinstance(v, (int, Fraction, GaussRat)) or hasattr(v, "_mpc_"):
        return BivarPoly.const(v)
    raise TypeError(f"cannot use {v!r} as a polynomial")
