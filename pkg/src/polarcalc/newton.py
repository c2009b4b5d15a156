"""Newton polygon of ``f`` relative to an arc ``phi``.

Everything is driven by :class:`RelativeForm`, the polynomial
``F(X, Y) = f(X + phi(Y), Y)`` stored column by column (column ``i`` is the
coefficient of ``X^i``, a Puiseux polynomial in ``Y``). Sliding an arc by
one term is a Taylor shift of the columns, so the form is updated in place
of being recomputed. Each column remembers a floor: its coefficients are
exact strictly below the floor and unknown at or above it. Floors come
from a height cap (to bound work) or from a truncated arc.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

from .errors import PhiIsRoot, TruncationTooShallow
from .numbers import INF, GaussRat, is_exact
from .poly import BivarPoly
from .series import PuiseuxSeries, _accumulate


@dataclass(frozen=True)
class NewtonDot:
    i: int
    h: Fraction
    coeff: object = field(compare=False)


@dataclass(frozen=True)
class NewtonEdge:
    left: NewtonDot
    right: NewtonDot
    tan_theta: Fraction
    # coefficients of z^0 .. z^right.i; only dots on the edge contribute
    edge_poly: tuple = field(compare=False)

    def support(self):
        return [i for i, c in enumerate(self.edge_poly) if c]


@dataclass(frozen=True)
class NewtonDiagram:
    dots: tuple
    edges: tuple
    h0: object
    h1: object
    highest_edge: NewtonEdge | None
    floors: tuple = ()
    approximate: bool = False
    certified: bool = True

    def to_json(self):
        from .parser import format_rational

        def num(c):
            if is_exact(c):
                return [str(c.re), str(c.im)]
            from .parser import _approx_real

            return [_approx_real(c.real), _approx_real(c.imag)]

        def ext(v):
            return None if v is None else ("inf" if v is INF else format_rational(v))

        return {
            "dots": [[d.i, format_rational(d.h)] for d in self.dots],
            "edges": [
                {"tan_theta": format_rational(e.tan_theta), "poly": [num(c) for c in e.edge_poly]}
                for e in self.edges
            ],
            "h0": ext(self.h0),
            "h1": ext(self.h1),
        }


class RelativeForm:
    """Columns of ``f(X + phi(Y), Y)`` over the exponent denominator ``N``."""

    __slots__ = ("N", "cols", "floors")

    def __init__(self, N, cols, floors):
        self.N = N
        self.cols = cols
        self.floors = floors

    @classmethod
    def of_poly(cls, f: BivarPoly, cap=INF):
        cols = [dict() for _ in range(max(f.x_degree() + 1, 1))]
        for (i, j), c in f.monomials.items():
            if cap is INF or j < cap:
                cols[i][j] = c
        return cls(1, tuple(cols), tuple(cap for _ in cols))

    @classmethod
    def build(cls, f: BivarPoly, phi: PuiseuxSeries, cap=INF):
        form = cls.of_poly(f, cap)
        for e, c in phi.terms:
            form = form.shift(c, e)
        if phi.trunc is not INF:
            form = form.perturb(phi.trunc)
        return form

    # -- updates
    def _rescale(self, n):
        if n == self.N:
            return self.cols
        f = n // self.N
        return tuple({k * f: c for k, c in col.items()} for col in self.cols)

    def shift(self, c, e, columns=None) -> "RelativeForm":
        """Form relative to ``phi + c*y^e``, optionally only its first
        ``columns`` columns."""
        e = Fraction(e)
        n = lcm(self.N, e.denominator)
        cols = self._rescale(n)
        s = int(e * n)
        floors = self.floors
        dx = len(cols) - 1
        cpow = [GaussRat(1)]
        for _ in range(dx):
            cpow.append(cpow[-1] * c)
        exact = is_exact(c) and all(is_exact(v) for col in cols for v in col.values())
        new_cols, new_floors = [], []
        for i in range(dx + 1 if columns is None else min(columns, dx + 1)):
            fl = INF
            for k in range(i, dx + 1):
                if floors[k] is not INF:
                    cand = floors[k] + e * (k - i)
                    fl = cand if fl is INF or cand < fl else fl
            limit = None if fl is INF else fl * n
            acc = {}
            for k in range(i, dx + 1):
                col = cols[k]
                if not col:
                    continue
                mult = cpow[k - i] * comb(k, i)
                off = s * (k - i)
                for key, v in col.items():
                    kk = key + off
                    if limit is not None and kk >= limit:
                        continue
                    acc.setdefault(kk, []).append(v * mult if k > i else v)
            out = {}
            for kk, vs in acc.items():
                if exact:
                    t = vs[0]
                    for v in vs[1:]:
                        t = t + v
                    if t:
                        out[kk] = t
                else:
                    t = _accumulate((v, None) for v in vs)
                    if t is not None:
                        out[kk] = t
            new_cols.append(out)
            new_floors.append(fl)
        return RelativeForm(n, tuple(new_cols), tuple(new_floors))

    def perturb(self, t) -> "RelativeForm":
        """Form relative to ``phi + O(y^t)``: lower every floor accordingly."""
        t = Fraction(t)
        dx = len(self.cols) - 1
        floors = list(self.floors)
        for i in range(dx + 1):
            for k in range(i + 1, dx + 1):
                low = self.valuation_bound(k)
                if low is INF:
                    continue
                cand = low + t * (k - i)
                if floors[i] is INF or cand < floors[i]:
                    floors[i] = cand
        cols = []
        for i, col in enumerate(self.cols):
            fl = floors[i]
            cols.append(col if fl is INF else {k: v for k, v in col.items() if Fraction(k, self.N) < fl})
        return RelativeForm(self.N, tuple(cols), tuple(floors))

    # -- views
    def lowest(self, i):
        """``(h, coeff)`` of the lowest dot in column ``i``, or None."""
        if i >= len(self.cols) or not self.cols[i]:
            return None
        k = min(self.cols[i])
        return Fraction(k, self.N), self.cols[i][k]

    def valuation_bound(self, i):
        low = self.lowest(i)
        if low is not None:
            return low[0]
        return self.floors[i] if i < len(self.floors) else INF

    def height(self, i):
        """Certified lowest height in column ``i``: a rational, INF (column
        vanishes identically) or None (not known below the floor)."""
        low = self.lowest(i)
        if low is not None:
            return low[0]
        if i >= len(self.floors) or self.floors[i] is INF:
            return INF
        return None

    def column_series(self, i) -> PuiseuxSeries:
        col = self.cols[i] if i < len(self.cols) else {}
        fl = self.floors[i] if i < len(self.floors) else INF
        return PuiseuxSeries._raw(self.N, list(col.items()), fl)

    def is_approximate(self):
        return any(not is_exact(v) for col in self.cols for v in col.values())

    def dots(self):
        out = []
        for i, col in enumerate(self.cols):
            for k in sorted(col):
                out.append(NewtonDot(i, Fraction(k, self.N), col[k]))
        return out

    # -- polygon
    def chain(self, k=None):
        """Lower-left boundary ending at the lowest dot of column ``k``.

        By default ``k`` is the leftmost column reaching the minimal height.
        Returns ``(vertices, certified)`` with vertices as ``(i, h)`` pairs
        ordered by increasing ``i``.
        """
        lows = {i: self.lowest(i) for i in range(len(self.cols))}
        lows = {i: v for i, v in lows.items() if v is not None}
        if not lows:
            return [], False
        if k is None:
            hmin = min(v[0] for v in lows.values())
            k = min(i for i, v in lows.items() if v[0] == hmin)
        if k not in lows:
            return [], False
        pts = [(i, lows[i][0]) for i in sorted(lows) if i <= k]
        hull = []
        for p in pts:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
                hull.pop()
            hull.append(p)
        certified = self._chain_certified(hull, k)
        return hull, certified

    def _chain_certified(self, hull, k):
        i0 = hull[0][0]
        for i in range(k + 1):
            fl = self.floors[i]
            if fl is INF:
                continue
            if i < i0:
                return False
            if not fl > _line_at(hull, i):
                return False
        return True

    def edges(self, k=None):
        hull, certified = self.chain(k)
        edges = []
        for a in range(len(hull) - 1):
            (il, hl), (ir, hr) = hull[a], hull[a + 1]
            tan = (hl - hr) / (ir - il)
            poly = [GaussRat(0)] * (ir + 1)
            for i in range(il, ir + 1):
                low = self.lowest(i)
                if low is not None and low[0] == hl - tan * (i - il):
                    poly[i] = low[1]
            left = NewtonDot(il, hl, self.lowest(il)[1])
            right = NewtonDot(ir, hr, self.lowest(ir)[1])
            edges.append(NewtonEdge(left, right, tan, tuple(poly)))
        edges.reverse()
        return edges, certified

    def diagram(self, k=None) -> NewtonDiagram:
        edges, certified = self.edges(k)
        highest = edges[-1] if edges and edges[-1].left.i == 0 else None
        return NewtonDiagram(
            dots=tuple(self.dots()),
            edges=tuple(edges),
            h0=self.height(0),
            h1=self.height(1),
            highest_edge=highest,
            floors=tuple(self.floors),
            approximate=self.is_approximate(),
            certified=certified,
        )

    def highest_edge(self):
        """Highest edge of the full polygon, or None when there is no dot on
        ``X = 0``. Raises TruncationTooShallow when it cannot be certified."""
        if self.lowest(0) is None:
            if self.floors[0] is INF:
                return None
            raise TruncationTooShallow(f"no dot on X=0 below the floor {self.floors[0]}")
        edges, certified = self.edges()
        if not certified:
            raise TruncationTooShallow("relative polygon not certified at this depth")
        return edges[-1] if edges else None


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _line_at(hull, i):
    for a in range(len(hull) - 1):
        (il, hl), (ir, hr) = hull[a], hull[a + 1]
        if il <= i <= ir:
            return hl + (hr - hl) * (i - il) / (ir - il)
    return hull[-1][1]


# ---------------------------------------------------------------- public
def relative_diagram(f: BivarPoly, phi: PuiseuxSeries) -> NewtonDiagram:
    """Newton diagram of ``f`` relative to ``phi``.

    Raises TruncationTooShallow when the lowest dot on ``X = 0`` or
    ``X = 1`` is hidden by the truncation of ``phi``.
    """
    form = RelativeForm.build(f, phi)
    diag = form.diagram()
    if diag.h0 is None or diag.h1 is None:
        which = "X=0" if diag.h0 is None else "X=1"
        raise TruncationTooShallow(f"lowest dot on {which} lies beyond the arc truncation")
    return diag


def polygon_edges(diagram: NewtonDiagram):
    return list(diagram.edges)


def ell_heights(f: BivarPoly, phi: PuiseuxSeries):
    """``(h0, h1)``: lowest dots on ``X = 0`` and ``X = 1``."""
    diag = relative_diagram(f, phi)
    if diag.h0 is INF:
        raise PhiIsRoot("the arc is a root of f: no dot on X=0")
    return diag.h0, diag.h1


def substitute(f: BivarPoly, phi: PuiseuxSeries) -> PuiseuxSeries:
    """``f(phi(y), y)`` as a series (truncated when ``phi`` is)."""
    return RelativeForm.build(f, phi).column_series(0)


__all__ = [
    "NewtonDot",
    "NewtonEdge",
    "NewtonDiagram",
    "RelativeForm",
    "relative_diagram",
    "polygon_edges",
    "ell_heights",
    "substitute",
]
