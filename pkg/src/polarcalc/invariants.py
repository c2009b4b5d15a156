"""Polar quotients, gradient exponents, arc exponents, intersection
multiplicities and degree bounds.

Polar quotients are computed along two independent routes: orders of
``f`` along its polar branches, and sums over root contacts (checked by
substituting a generic approximation of each root pair). The complex
gradient exponent is likewise taken both from polar branches and from root
pairs; any disagreement raises :class:`RouteMismatch`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import (
    DegenerateSamples,
    NonExactInput,
    PhiIsRoot,
    RouteMismatch,
    TangentArc,
    TruncationTooShallow,
)
from .newton import RelativeForm
from .numbers import INF, is_exact
from .parser import format_arc, format_coeff
from .poly import BivarPoly
from .puiseux import (
    Branch,
    GenericConstant,
    GenericSampler,
    _root_data,
    approximation_generic,
    certified_order,
    depth_limit,
    mini_regularize,
    real_polar_data,
)
from .series import PuiseuxSeries
from .sqf import gcd_x, squarefree_decompose_x

POLAR = "polar_branches"
APPROX = "approximations"
BOTH = "both"


@dataclass(frozen=True)
class QuotientSet:
    values: tuple
    witnesses: dict = field(compare=False)
    route: str = BOTH

    def to_json(self):
        return [{"value": _q(v), "witness": self.witnesses.get(v)} for v in self.values]


@dataclass(frozen=True)
class InvariantReport:
    field: str
    m: int
    d: int
    quotients: QuotientSet
    L: Fraction
    L_plus: Fraction | None
    L_minus: Fraction | None
    witness: object
    bound_gradient: Fraction
    bound_classical: Fraction
    bound_classical_via_L: Fraction
    shear: GenericConstant
    ell_values: tuple = ()
    certificates: tuple = ()


def _q(v):
    return "inf" if v is INF else str(Fraction(v))


# ---------------------------------------------------------------- arcs
def ell_of_arc(f: BivarPoly, phi: PuiseuxSeries) -> Fraction:
    """``min((h0 - 1)/h0, h1/h0)`` from the lowest dots on ``X = 0, 1``."""
    if phi and phi.order() < 1:
        raise TangentArc("the arc is tangent to the x-axis (order < 1)")
    form = RelativeForm.build(f, phi)
    h0 = form.height(0)
    if h0 is None:
        raise TruncationTooShallow("ord f along the arc is hidden by its truncation")
    if h0 is INF:
        raise PhiIsRoot("the arc is a root of f")
    first = (h0 - 1) / h0
    h1 = form.height(1)
    if h1 is INF:
        return first
    if h1 is None:
        if form.floors[1] >= h0 - 1:
            return first
        raise TruncationTooShallow("ord df/dx along the arc is hidden by its truncation")
    return min(first, h1 / h0)


def _ell_deepening(f, growth, limit):
    while True:
        s = growth.series()
        try:
            return ell_of_arc(f, s)
        except TruncationTooShallow:
            t = s.trunc
            if t is INF or t > limit:
                raise
            growth.deepen(max(2 * t, t + 1))


# ---------------------------------------------------------------- analysis
class _Analysis:
    """Shared computation for one (mini-regularised) polynomial."""

    def __init__(self, f: BivarPoly, seed=0, field=None):
        if not f.is_exact():
            raise NonExactInput("exact coefficients required")
        self.original = f
        self.sampler = seed if isinstance(seed, GenericSampler) else GenericSampler(seed)
        self.f, self.shear, self.m = mini_regularize(f, self.sampler)
        self.field = field
        self.limit = depth_limit(self.f)
        self._roots = None
        self._polar = None
        self._forms = {}

    # roots of f
    @property
    def roots(self):
        if self._roots is None:
            self._roots = _root_data(self.f, self.field, limit=self.limit)
        return self._roots

    # polar branches with certified ord f
    @property
    def polar(self):
        if self._polar is None:
            data = _root_data(self.f.diff_x(), self.field, split_by=self.f, limit=self.limit)
            out = []
            for a, tag in enumerate(data.tags):
                if tag:
                    continue
                g = data.growths[a]
                h0 = certified_order(self.f, g, self.limit)
                out.append((g, data.mults[a], h0))
            self._polar = out
        return self._polar

    def quotients_polar(self):
        wit = {}
        for g, _, h0 in self.polar:
            arc = format_arc(g.series())
            if h0 not in wit or arc < wit[h0]:
                wit[h0] = arc
        return wit

    def pair_values(self):
        """``{(a, b): value}`` over root pairs from the contact formula."""
        rd = self.roots
        n = len(rd.growths)
        out = {}
        for a in range(n):
            for b in range(a + 1, n):
                total = Fraction(0)
                for k in range(n):
                    total += rd.mults[k] * min(rd.contact[a][k], rd.contact[b][k])
                out[(a, b)] = total
        return out

    def _prefix_form(self, a, k, cap):
        """Relative form along the first ``k`` terms of root ``a``; nested
        prefixes share their shifts."""
        key = (a, k, cap)
        form = self._forms.get(key)
        if form is None:
            if k == 0:
                form = RelativeForm.of_poly(self.f, cap)
            else:
                e, c = self.roots.series(a).terms[k - 1]
                form = self._prefix_form(a, k - 1, cap).shift(c, e)
            self._forms[key] = form
        return form

    def check_pair_by_substitution(self, a, b, value, cap=None):
        rd = self.roots
        rho = rd.contact[a][b]
        prefix = rd.series(a).prefix_below(rho)
        g = approximation_generic(self.f, prefix, rho, self.sampler)
        arc = prefix.add_term(rho, g.value)
        # terms above the expected order cannot change the verdict
        cap = value + 1 if cap is None else cap
        h0 = self._prefix_form(a, len(prefix.terms), cap).shift(g.value, rho, columns=1).height(0)
        if h0 != value:
            seen = f">= {_q(cap)}" if h0 is None else _q(h0)
            raise RouteMismatch(
                f"root pair ({format_arc(rd.series(a))}, {format_arc(rd.series(b))}): contact formula gives "
                f"{_q(value)} but substitution into {format_arc(arc)} gives {seen}"
            )
        return h0

    def quotients_approx(self, check=True):
        wit = {}
        rd = self.roots
        values = self.pair_values()
        cap = max(values.values(), default=0) + 1
        for (a, b), v in values.items():
            if check:
                self.check_pair_by_substitution(a, b, v, cap)
            pair = sorted([format_arc(rd.series(a)), format_arc(rd.series(b))])
            if v not in wit or pair < wit[v]:
                wit[v] = pair
        return wit

    def quotient_set(self, route=BOTH, check=True) -> QuotientSet:
        if route == POLAR:
            wit = self.quotients_polar()
        elif route == APPROX:
            wit = self.quotients_approx(check)
        elif route == BOTH:
            wp = self.quotients_polar()
            wa = self.quotients_approx(check)
            if set(wp) != set(wa):
                raise RouteMismatch(
                    f"polar quotients differ: polar branches give {sorted(map(_q, wp))}, "
                    f"root pairs give {sorted(map(_q, wa))}"
                )
            wit = wp
        else:
            raise ValueError(f"unknown route {route!r}")
        return QuotientSet(tuple(sorted(wit)), wit, route)


def polar_quotients(f: BivarPoly, route: str = BOTH, seed=0, field=None) -> QuotientSet:
    """The set of ``ord f`` along polar branches (equivalently along
    generic approximations of root pairs)."""
    return _Analysis(f, seed, field).quotient_set(route)


# ---------------------------------------------------------------- bounds
def degree_bounds(f, L=None):
    """``(bound_gradient, bound_classical, bound_classical_via_L, satisfied)``.

    ``f`` may be a polynomial or just its degree; with a bare degree ``L``
    must be given.
    """
    if isinstance(f, int):
        if L is None:
            raise ValueError("L is required when only the degree is given")
        d = f
    else:
        d = f.degree()
    if d < 1:
        raise ValueError("f must have degree >= 1")
    classical = Fraction((d - 1) ** 2 + 1)
    gradient = 1 - 1 / classical
    if L is None:
        L = gradient_exponent_complex(f).L
    L = Fraction(L)
    via_L = 1 / (1 - L)
    return gradient, classical, via_L, (L <= gradient and via_L <= classical)


# ---------------------------------------------------------------- exponents
def _max_with_witness(pairs):
    """Max of ``(value, witness_text)`` pairs; ties go to the smallest text."""
    best = None
    for v, w in pairs:
        if best is None or v > best[0] or (v == best[0] and w < best[1]):
            best = (v, w)
    return best


def gradient_exponent_complex(f: BivarPoly, seed=0, field=None) -> InvariantReport:
    """Complex gradient exponent from polar branches, cross-checked against
    root pairs."""
    an = _Analysis(f, seed, field)
    m = an.m
    floor = Fraction(m - 1, m)
    certs = []
    ells = []
    for g, _, h0 in an.polar:
        ell = _ell_deepening(an.f, g, an.limit)
        if ell != 1 - 1 / h0:
            raise RouteMismatch(f"along polar branch {format_arc(g.series())}: ell = {_q(ell)} but 1 - 1/ord f = {_q(1 - 1 / h0)}")
        ells.append((ell, format_arc(g.series())))
    best = _max_with_witness(ells)
    L_polar = best[0] if best else floor
    witness = best[1] if best else None
    certs.append("polar-branch orders certified by a frozen relative polygon")

    quotients = an.quotient_set(BOTH)
    certs.append("polar quotients agree along polar branches and root pairs")
    pairs = an.pair_values()
    if pairs:
        L_pairs = max(1 - 1 / v for v in pairs.values())
    else:
        L_pairs = floor
    if L_pairs != L_polar:
        raise RouteMismatch(f"gradient exponent: polar branches give {_q(L_polar)}, root pairs give {_q(L_pairs)}")
    certs.append("gradient exponent agrees along polar branches and root pairs")
    d = an.f.degree()
    bg, bc, bl, ok = degree_bounds(an.f, L_polar)
    return InvariantReport(
        field="complex",
        m=m,
        d=d,
        quotients=quotients,
        L=L_polar,
        L_plus=None,
        L_minus=None,
        witness=witness,
        bound_gradient=bg,
        bound_classical=bc,
        bound_classical_via_L=bl,
        shear=an.shear,
        ell_values=tuple((w, v) for v, w in sorted(ells, key=lambda t: t[1])),
        certificates=tuple(certs),
    )


def _l_plus(f: BivarPoly, m, sampler, field):
    floor = Fraction(m - 1, m)
    ells = []
    for r in real_polar_data(f, sampler, field):
        h0, h1 = r.h0, r.h1
        ell = (h0 - 1) / h0 if h1 is INF else min((h0 - 1) / h0, h1 / h0)
        ells.append((ell, format_arc(r.branch.series)))
    best = _max_with_witness(ells)
    if best is None or best[0] < floor:
        return floor, None, ells
    return best[0], best[1], ells


def gradient_exponent_real(f: BivarPoly, seed=0, field=None) -> InvariantReport:
    """Real gradient exponent ``max(L+, L-)`` where ``L-`` is ``L+`` of
    ``f(x, -y)``."""
    if not f.is_real():
        raise ValueError("the real gradient exponent needs real coefficients")
    an = _Analysis(f, seed, field)
    m = an.m
    lp, wp, ells_p = _l_plus(an.f, m, an.sampler, field)
    lm, wm, ells_m = _l_plus(an.f.flip_y(), m, an.sampler, field)
    L = max(lp, lm)
    witness = wp if lp >= lm else (None if wm is None else "y -> -y: " + wm)
    quotients = an.quotient_set(BOTH)
    d = an.f.degree()
    bg, bc, bl, ok = degree_bounds(an.f, L)
    ells = [(w, v) for v, w in ells_p] + [("y -> -y: " + w, v) for v, w in ells_m]
    return InvariantReport(
        field="real",
        m=m,
        d=d,
        quotients=quotients,
        L=L,
        L_plus=lp,
        L_minus=lm,
        witness=witness,
        bound_gradient=bg,
        bound_classical=bc,
        bound_classical_via_L=bl,
        shear=an.shear,
        ell_values=tuple(ells),
        certificates=(
            "real polar branches: realness certified past every polar contact",
            "polar quotients agree along polar branches and root pairs",
        ),
    )


# ---------------------------------------------------------------- intersections
def intersection_multiplicity(f: BivarPoly, g: BivarPoly, seed=0, field=None):
    """Sum over roots of ``f`` of ``ord g`` along the root, with
    multiplicity; INF when ``f`` and ``g`` share a component through the
    origin."""
    if not (f.is_exact() and g.is_exact()):
        raise NonExactInput("exact coefficients required")
    if f.is_zero() or f.coeff(0, 0):
        raise ValueError("f must vanish at the origin without vanishing identically")
    if g.is_zero():
        return INF
    if g.coeff(0, 0):
        return 0
    fs, c, _ = mini_regularize(f, seed)
    gs = g.shear(c.value)
    limit = depth_limit(fs) + depth_limit(gs)
    total = Fraction(0)
    for p, mult in squarefree_decompose_x(fs):
        q = gcd_x(p, gs)
        if q.x_degree() > 0 and not q.coeff(0, 0):
            return INF
        data = _root_data(p, field, limit=limit)
        for growth in data.growths:
            total += mult * certified_order(gs, growth, limit)
    if total.denominator != 1:
        raise RouteMismatch(f"intersection multiplicity {total} is not an integer")
    return int(total)


# ---------------------------------------------------------------- numerics
def numeric_exponent_estimate(f: BivarPoly, phi: PuiseuxSeries, t_min=1e-6, t_max=1e-3, samples=64, prec=200) -> float:
    """Least-squares slope of ``log|grad f|`` against ``log|f|`` along
    ``t -> (phi(t), t)`` at log-spaced ``t``."""
    ctx = mpmath.mp.clone() if hasattr(mpmath.mp, "clone") else mpmath.MPContext()
    ctx.prec = prec
    fx, fy = f.diff_x(), f.diff_y()
    xs, ys = [], []
    for t in np.geomspace(t_min, t_max, samples):
        tt = ctx.mpf(float(t))
        x = phi.evaluate(tt, ctx)
        y = ctx.mpc(tt)
        fv = abs(f.eval_numeric(x, y, ctx))
        gv = ctx.sqrt(abs(fx.eval_numeric(x, y, ctx)) ** 2 + abs(fy.eval_numeric(x, y, ctx)) ** 2)
        if fv == 0 or gv == 0:
            continue
        xs.append(float(ctx.log(fv)))
        ys.append(float(ctx.log(gv)))
    if len(xs) < 2 or max(xs) - min(xs) == 0:
        raise DegenerateSamples("f vanishes (or is constant) along every sample of the arc")
    slope, _ = np.polyfit(np.array(xs), np.array(ys), 1)
    return float(slope)


__all__ = [
    "QuotientSet",
    "InvariantReport",
    "ell_of_arc",
    "polar_quotients",
    "gradient_exponent_complex",
    "gradient_exponent_real",
    "intersection_multiplicity",
    "degree_bounds",
    "numeric_exponent_estimate",
    "POLAR",
    "APPROX",
    "BOTH",
]
_ = (Branch, is_exact, format_coeff)
