"""Sliding arcs along polynomials: Newton-Puiseux roots, polar branches,
approximations of root pairs and real polar branches.

Roots are grown lazily. The expansion tree of each squarefree factor is
walked until every root sits on a simple edge (a single Newton edge of
height one); from there each root is continued one term per slide and
only as deep as a caller asks. Contacts between roots, and orders of other
polynomials along roots, deepen the expansions on demand.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .errors import (
    GenericityFailed,
    IndeterminateContact,
    NotARoot,
    NotMiniRegular,
    PhiIsRoot,
    TruncationTooShallow,
)
from .newton import RelativeForm
from .numbers import DEFAULT_FIELD, INF, GaussRat, is_exact, is_real_coeff, real_part_coeff, to_mpc
from .poly import BivarPoly
from .series import PuiseuxSeries, contact_order
from .sqf import div_x, gcd_x, squarefree_decompose_x
from .upoly import nonzero_roots, pderiv

MAX_RETRIES = 64
FORM_SIZE_LIMIT = 256


# ---------------------------------------------------------------- genericity
@dataclass(frozen=True)
class GenericConstant:
    value: object
    conditions_checked: tuple = ()
    seed: int = 0


class GenericSampler:
    """Seeded source of small random rationals checked against conditions."""

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._rng = random.Random(seed)

    def draw(self) -> Fraction:
        num = self._rng.randint(1, 9) * self._rng.choice((1, -1))
        den = self._rng.randint(1, 9)
        return Fraction(num, den)

    def sample(self, conditions=()) -> GenericConstant:
        """Draw until every ``(name, poly)`` condition is nonzero at the value.

        ``poly`` is a coefficient list (low degree first) in the constant.
        """
        for _ in range(MAX_RETRIES):
            v = GaussRat(self.draw())
            if all(poly_nonzero_at(p, v) for _, p in conditions):
                return GenericConstant(v, tuple(name for name, _ in conditions), self.seed)
        raise GenericityFailed(
            f"no generic constant after {MAX_RETRIES} draws for: {', '.join(n for n, _ in conditions)}"
        )


def poly_nonzero_at(p, z) -> bool:
    """Tolerance-aware test that the univariate ``p`` does not vanish at ``z``."""
    acc = 0
    scale = 0
    exact = True
    zz = GaussRat(1)
    for c in p:
        term = c * zz
        acc = acc + term
        if not is_exact(term):
            exact = False
            scale = max(scale, abs(term))
        zz = zz * z
    if exact:
        return bool(acc)
    return abs(acc) > acc.context.tol * (scale or 1)


def _lowest_homogeneous_at(f: BivarPoly):
    """Coefficient list of ``c -> f_m(1, c)``."""
    m = f.order()
    out = [GaussRat(0)] * (m + 1)
    for (i, j), c in f.monomials.items():
        if i + j == m:
            out[j] = c
    return out


def mini_regularize(f: BivarPoly, seed: int | GenericSampler = 0):
    """Shear ``f(x, y + c*x)`` so that ``x^m`` appears in the lowest part.

    Returns ``(f_sheared, GenericConstant c, m)`` with ``c = 0`` when ``f``
    is already mini-regular.
    """
    if f.is_zero():
        raise ValueError("f must not vanish identically")
    if f.coeff(0, 0):
        raise ValueError("f must vanish at the origin")
    sampler = seed if isinstance(seed, GenericSampler) else GenericSampler(seed)
    m = f.order()
    if f.is_mini_regular():
        return f, GenericConstant(GaussRat(0), (), sampler.seed), m
    cond = _lowest_homogeneous_at(f)
    c = sampler.sample([("f_m(1,c) != 0", cond)])
    return f.shear(c.value), c, m


# ---------------------------------------------------------------- growth
class _Growth:
    """One root of ``poly`` being continued term by term.

    ``phi`` is the exact finite prefix; ``form`` is ``poly`` relative to it.
    In single mode the next term sits at ``h0 - h1`` where ``h1``, the
    lowest height on ``X = 1``, no longer changes. ``h1 is None`` marks a
    root that is the finite series ``phi`` itself.
    """

    __slots__ = ("poly", "phi", "form", "h1")

    def __init__(self, poly, phi, form, h1):
        self.poly = poly
        self.phi = phi
        self.form = form
        self.h1 = h1

    def next_bound(self):
        if self.h1 is None:
            return INF
        low0 = self.form.lowest(0)
        if low0 is not None:
            return low0[0] - self.h1
        fl = self.form.floors[0]
        if fl is INF:
            return INF
        return fl - self.h1

    def series(self) -> PuiseuxSeries:
        phi = self.phi
        return PuiseuxSeries._raw(phi.denom, list(phi._c), self.next_bound())

    def _size(self):
        return sum(len(c) for c in self.form.cols)

    def deepen(self, target):
        target = Fraction(target)
        while True:
            nb = self.next_bound()
            if nb is INF or nb >= target:
                return
            low0 = self.form.lowest(0)
            if low0 is None:
                self.form = RelativeForm.build(self.poly, self.phi, self.h1 + 2 * target + 1)
                continue
            a1 = self.form.lowest(1)[1]
            c = -low0[1] / a1
            e = low0[0] - self.h1
            self.phi = self.phi + PuiseuxSeries._raw(1, [], INF).add_term(e, c)
            self.form = self.form.shift(c, e)
            if self.form.lowest(0) is None and self.form.floors[0] is INF:
                self.h1 = None
                return
            if self.form.floors[0] is INF and self._size() > FORM_SIZE_LIMIT:
                self.form = RelativeForm.build(self.poly, self.phi, self.h1 + 2 * target + 1)


def _x_order_at_zero(h: BivarPoly):
    ks = [i for (i, j) in h.monomials if j == 0]
    return min(ks) if ks else None


def _tree(poly, form, phi, k, e_last, out, field):
    low0 = form.lowest(0)
    if low0 is None:
        if form.floors[0] is not INF:
            raise TruncationTooShallow("expansion tree reached a truncated column")
        out.append(_Growth(poly, phi, form, None))
        k -= 1
        if k == 0:
            return
        edges, _ = form.edges(k + 1)
    else:
        if k == 1:
            low1 = form.lowest(1)
            out.append(_Growth(poly, phi, form, low1[0]))
            return
        edges, _ = form.edges(k)
    for edge in edges:
        if edge.tan_theta <= e_last:
            continue
        for c, mu in nonzero_roots(edge.edge_poly, field):
            _tree(poly, form.shift(c, edge.tan_theta), phi.add_term(edge.tan_theta, c), mu, edge.tan_theta, out, field)


def _growths_of(h: BivarPoly, field):
    """Roots through the origin of the squarefree ``h``."""
    k = _x_order_at_zero(h)
    if not k:
        return []
    out = []
    form = RelativeForm.of_poly(h)
    _tree(h, form, PuiseuxSeries.zero(), k, Fraction(0), out, field)
    if len(out) != k:
        raise TruncationTooShallow(f"expected {k} roots through the origin, found {len(out)}")
    return out


def _separate(growths, limit):
    """Pairwise contacts, deepening expansions until every pair separates."""
    n = len(growths)
    contact = [[INF] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            while True:
                sa, sb = growths[a].series(), growths[b].series()
                try:
                    ab = contact_order(sa, sb)
                    break
                except IndeterminateContact:
                    t = min(sa.trunc, sb.trunc)
                    if t is INF or t > limit:
                        raise TruncationTooShallow(f"roots do not separate below y^{limit}")
                    target = max(2 * t, t + 1)
                    growths[a].deepen(target)
                    growths[b].deepen(target)
            if ab is INF:
                raise TruncationTooShallow("two distinct roots expanded to identical series")
            contact[a][b] = contact[b][a] = ab
    return contact


def depth_limit(f: BivarPoly):
    d = max(f.degree(), 1)
    return 16 * d * d


def default_depth(f: BivarPoly):
    d = max(f.degree(), 1)
    return Fraction(2 * d * d)


# ---------------------------------------------------------------- branch sets
@dataclass(frozen=True)
class Branch:
    series: PuiseuxSeries
    multiplicity: int = 1
    source: str = "root"
    order_f: object = None
    growth: object = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class BranchSet:
    branches: tuple
    contact: tuple
    shear: GenericConstant
    m: int
    seed: int = 0
    certified: tuple = ()

    def to_json(self):
        from .parser import format_arc, format_coeff

        out = {
            "branches": [
                {
                    "arc": format_arc(b.series),
                    "multiplicity": b.multiplicity,
                    **({"ord_f": _ext(b.order_f)} if b.order_f is not None else {}),
                }
                for b in self.branches
            ],
            "contact": [[_ext(v) for v in row] for row in self.contact],
            "seed": self.seed,
            "shear": format_coeff(self.shear.value),
            "m": self.m,
        }
        if self.certified:
            out["certified"] = list(self.certified)
        return out


def _ext(v):
    return "inf" if v is INF else str(Fraction(v))


class _RootData:
    """Separated lazy roots of a polynomial with their multiplicities."""

    def __init__(self, growths, mults, tags, limit):
        self.growths = growths
        self.mults = mults
        self.tags = tags
        self.limit = limit
        self.contact = _separate(growths, limit)

    def series(self, a):
        return self.growths[a].series()


def _root_data(f: BivarPoly, field=None, split_by=None, limit=None):
    """Lazy roots of ``f`` through the origin.

    With ``split_by = g`` each squarefree factor ``p`` is split into
    ``gcd(p, g)`` and the cofactor, and roots are tagged True when they are
    roots of ``g``.
    """
    field = field or DEFAULT_FIELD
    limit = limit or depth_limit(f)
    growths, mults, tags = [], [], []
    for p, mult in squarefree_decompose_x(f):
        parts = [(p, False)]
        if split_by is not None:
            q = gcd_x(p, split_by)
            if q.x_degree() > 0:
                parts = [(q, True)]
                rest = div_x(p, q)
                if rest.x_degree() > 0:
                    parts.append((rest, False))
        for h, tag in parts:
            for g in _growths_of(h, field):
                growths.append(g)
                mults.append(mult)
                tags.append(tag)
    return _RootData(growths, mults, tags, limit)


def _require_mini_regular(f):
    if f.coeff(0, 0):
        raise ValueError("f must vanish at the origin")
    if not f.is_mini_regular():
        raise NotMiniRegular("f is not mini-regular in x; apply mini_regularize first")


def _order_normalised(data, idx, branches, extra=None):
    from .parser import format_arc

    order = sorted(range(len(idx)), key=lambda a: format_arc(branches[a].series))
    branches = [branches[a] for a in order]
    idx = [idx[a] for a in order]
    contact = tuple(tuple(data.contact[i][j] if i != j else INF for j in idx) for i in idx)
    return branches, contact, order


def expand_roots(f: BivarPoly, depth=None, field=None, shear=None) -> BranchSet:
    """Newton-Puiseux roots of the mini-regular ``f`` with multiplicities.

    Every root is expanded at least to ``depth`` (default ``2*d^2``) and
    until all pairs of distinct roots separate.
    """
    _require_mini_regular(f)
    data = _root_data(f, field)
    depth = default_depth(f) if depth is None else max(Fraction(depth), default_depth(f))
    for g in data.growths:
        g.deepen(depth)
    m = f.order()
    if sum(data.mults) != m:
        raise TruncationTooShallow(f"root multiplicities sum to {sum(data.mults)}, expected {m}")
    branches = [
        Branch(g.series(), mu, "root", growth=g) for g, mu in zip(data.growths, data.mults)
    ]
    branches, contact, _ = _order_normalised(data, list(range(len(branches))), branches)
    shear = shear or GenericConstant(GaussRat(0))
    return BranchSet(tuple(branches), contact, shear, m, shear.seed)


# ---------------------------------------------------------------- orders along arcs
def _cap_for(f: BivarPoly, s: PuiseuxSeries):
    if s.trunc is INF:
        return INF
    a = min(j for (_, j) in f.monomials) if f.monomials else 0
    k0 = min(i for (i, j) in f.monomials if j == a) if f.monomials else 0
    return a + k0 * s.trunc + 1


def form_along(f: BivarPoly, s: PuiseuxSeries) -> RelativeForm:
    """``f`` relative to the (possibly truncated) arc ``s`` with a safe cap."""
    return RelativeForm.build(f, s, _cap_for(f, s))


def certified_order(f: BivarPoly, growth: _Growth, limit):
    """``ord f`` along a lazily grown root, deepening until certified."""
    while True:
        s = growth.series()
        h = form_along(f, s).height(0)
        if h is not None:
            return h
        t = s.trunc
        if t > limit:
            raise TruncationTooShallow(f"ord f along a branch not certified below y^{limit}")
        growth.deepen(max(2 * t, t + 1))


def polar_branches(f: BivarPoly, depth=None, field=None, shear=None) -> BranchSet:
    """Roots of ``df/dx`` that are not roots of ``f``, each with its
    certified ``ord f``."""
    _require_mini_regular(f)
    if f.order() < 2:
        raise ValueError("polar branches need order m >= 2")
    data = _root_data(f.diff_x(), field, split_by=f, limit=depth_limit(f))
    idx = [a for a, tag in enumerate(data.tags) if not tag]
    orders = [certified_order(f, data.growths[a], data.limit) for a in idx]
    if depth is not None:
        for a in idx:
            data.growths[a].deepen(depth)
    branches = [
        Branch(data.growths[a].series(), data.mults[a], "polar", o, data.growths[a])
        for a, o in zip(idx, orders)
    ]
    branches, contact, _ = _order_normalised(data, idx, branches)
    shear = shear or GenericConstant(GaussRat(0))
    return BranchSet(tuple(branches), contact, shear, f.order(), shear.seed)


# ---------------------------------------------------------------- sliding
def _edge_value_nonzero(edge, c):
    return poly_nonzero_at(edge.edge_poly, c)


def slide(f: BivarPoly, phi: PuiseuxSeries, root_choice) -> PuiseuxSeries:
    """``phi + c*y^(tan theta_H)`` for a root ``c`` of the highest-edge
    polynomial of ``f`` relative to ``phi``."""
    form = RelativeForm.build(f, phi)
    edge = form.highest_edge()
    if edge is None:
        raise PhiIsRoot("the arc is a root of f: no highest edge")
    c = root_choice if not isinstance(root_choice, (int, Fraction)) else GaussRat(root_choice)
    if not c or _edge_value_nonzero(edge, c):
        raise NotARoot(f"{c!r} is not a nonzero root of the highest-edge polynomial")
    out = phi.finite().add_term(edge.tan_theta, c)
    return out if phi.trunc is INF else out.truncate(phi.trunc) if phi.trunc > edge.tan_theta else out


def highest_edge_roots(f: BivarPoly, phi: PuiseuxSeries, field=None):
    """Nonzero roots (with multiplicity) of the highest-edge polynomial."""
    edge = RelativeForm.build(f, phi).highest_edge()
    if edge is None:
        raise PhiIsRoot("the arc is a root of f: no highest edge")
    return edge.tan_theta, nonzero_roots(edge.edge_poly, field or DEFAULT_FIELD)


def slide_to_stability(f: BivarPoly, phi: PuiseuxSeries, along: BivarPoly | None = None, field=None, limit=None):
    """Certify ``h0 = ord f(phi)``, extending ``phi`` only when needed.

    The arc is extended by sliding along ``along`` (the polynomial whose
    root ``phi`` approximates) until the truncation exceeds ``tan theta_H``
    of the polygon of ``f``, after which no further term can move the
    polygon. Returns ``(phi_extended, h0)``.
    """
    field = field or DEFAULT_FIELD
    limit = limit or depth_limit(f if along is None else along)
    while True:
        form = RelativeForm.build(f, phi)
        h0 = form.height(0)
        if h0 is INF:
            raise PhiIsRoot("the arc is a root of f")
        if h0 is not None:
            return phi, h0
        if along is None:
            raise TruncationTooShallow("ord f along the arc is hidden by its truncation; pass `along`")
        if phi.trunc > limit:
            raise TruncationTooShallow(f"no stable polygon below y^{limit}")
        base = phi.finite()
        aform = RelativeForm.build(along, base)
        edge = aform.highest_edge()
        if edge is None:
            phi = base
            continue
        roots = nonzero_roots(edge.edge_poly, field)
        c = roots[0][0]
        nxt = aform.shift(c, edge.tan_theta)
        nedge = nxt.highest_edge()
        phi = base.add_term(edge.tan_theta, c)
        if nedge is not None:
            phi = PuiseuxSeries._raw(phi.denom, list(phi._c), nedge.tan_theta)


# ---------------------------------------------------------------- approximations
def initial_form(form: RelativeForm, rho):
    """Coefficients in ``z`` of the weight-``rho`` initial part of ``form``
    and the minimal weight ``min(h + rho*i)`` over its dots."""
    rho = Fraction(rho)
    best = None
    for i in range(len(form.cols)):
        low = form.lowest(i)
        if low is None:
            continue
        w = low[0] + rho * i
        best = w if best is None or w < best else best
    if best is None:
        return [], INF
    poly = [GaussRat(0)] * len(form.cols)
    for i, col in enumerate(form.cols):
        for k, c in col.items():
            if Fraction(k, form.N) + rho * i == best:
                poly[i] = c
    while poly and not poly[-1]:
        poly.pop()
    return poly, best


def approximation_generic(f: BivarPoly, prefix: PuiseuxSeries, rho, sampler: GenericSampler) -> GenericConstant:
    """Generic ``g`` for ``prefix + g*y^rho``: the weight-``rho`` initial
    polynomial ``Q`` of ``f`` and its derivative do not vanish at ``g``."""
    q, _ = initial_form(RelativeForm.build(f, prefix), rho)
    conds = [("Q(g) != 0", q)]
    if len(q) > 1:
        conds.append(("Q'(g) != 0", pderiv(q)))
    return sampler.sample(conds)


def approximation(xi_i, xi_j, g) -> PuiseuxSeries:
    """Common part of two roots below their contact order ``rho`` plus
    ``g*y^rho``, as an exact finite arc."""
    si = xi_i.series if isinstance(xi_i, Branch) else xi_i
    sj = xi_j.series if isinstance(xi_j, Branch) else xi_j
    rho = contact_order(si, sj)
    if rho is INF:
        raise ValueError("identical branches have no approximation")
    gv = g.value if isinstance(g, GenericConstant) else g
    return si.prefix_below(rho).add_term(rho, gv)


# ---------------------------------------------------------------- real polar branches
def _first_nonreal(s: PuiseuxSeries):
    for e, c in s.terms:
        if not is_real_coeff(c, abs(to_mpc(c, DEFAULT_FIELD)) if not is_exact(c) else None):
            return e
    return None


def _realify(s: PuiseuxSeries):
    return PuiseuxSeries([(e, real_part_coeff(c)) for e, c in s.terms])


def _key(s: PuiseuxSeries, e):
    parts = []
    for ex, c in s.terms:
        if is_exact(c):
            parts.append((ex, "q", c.re, c.im))
        else:
            parts.append((ex, "a", mpmath.nstr(c.real, 12), mpmath.nstr(c.imag, 12)))
    return (tuple(parts), e)


@dataclass(frozen=True)
class RealPolar:
    """A real polar branch with certified heights of ``f`` along it."""

    branch: Branch
    h0: object
    h1: object
    generic: GenericConstant | None
    certified_real: bool


def real_polar_data(f: BivarPoly, sampler: GenericSampler, field=None):
    """Real polar branches of the real mini-regular ``f``."""
    _require_mini_regular(f)
    if not f.is_real():
        raise ValueError("real polar branches need real coefficients")
    fx = f.diff_x()
    data = _root_data(fx, field, split_by=f, limit=depth_limit(f))
    seen = set()
    out = []
    for a, g in enumerate(data.growths):
        s = g.series()
        e = _first_nonreal(s)
        if e is None:
            # real below a truncation beyond every contact with the other
            # polar roots: the conjugate root agrees too far, so it is itself
            if data.tags[a]:
                continue
            h0 = certified_order(f, g, data.limit)
            s = g.series()
            key = _key(s, None)
            if key in seen:
                continue
            seen.add(key)
            out.append(RealPolar(Branch(s, data.mults[a], "real_polar", h0, g), h0, INF, None, True))
            continue
        prefix = _realify(s.prefix_below(e))
        key = _key(prefix, e)
        if key in seen:
            continue
        seen.add(key)
        qf, _ = initial_form(RelativeForm.build(f, prefix), e)
        qx, _ = initial_form(RelativeForm.build(fx, prefix), e)
        gen = sampler.sample([("Q_f(g) != 0", qf), ("Q_fx(g) != 0", qx)])
        arc = prefix.add_term(e, gen.value)
        form = RelativeForm.build(f, arc)
        h0, h1 = form.height(0), form.height(1)
        out.append(RealPolar(Branch(arc, 1, "real_polar", h0), h0, h1, gen, True))
    from .parser import format_arc

    out.sort(key=lambda r: format_arc(r.branch.series))
    return out


def real_polar_branches(f: BivarPoly, depth=None, seed: int | GenericSampler = 0, field=None) -> BranchSet:
    sampler = seed if isinstance(seed, GenericSampler) else GenericSampler(seed)
    data = real_polar_data(f, sampler, field)
    branches = []
    for r in data:
        b = r.branch
        if depth is not None and b.growth is not None:
            b.growth.deepen(depth)
            b = Branch(b.growth.series(), b.multiplicity, b.source, b.order_f, b.growth)
        branches.append(b)
    n = len(branches)
    contact = tuple(
        tuple(INF if a == b else _safe_contact(branches[a].series, branches[b].series) for b in range(n))
        for a in range(n)
    )
    return BranchSet(tuple(branches), contact, GenericConstant(GaussRat(0)), f.order(), sampler.seed)


def _safe_contact(a, b):
    try:
        return contact_order(a, b)
    except IndeterminateContact:
        return None


__all__ = [
    "GenericConstant",
    "GenericSampler",
    "Branch",
    "BranchSet",
    "RealPolar",
    "mini_regularize",
    "expand_roots",
    "polar_branches",
    "real_polar_branches",
    "real_polar_data",
    "slide",
    "slide_to_stability",
    "highest_edge_roots",
    "approximation",
    "approximation_generic",
    "initial_form",
    "certified_order",
    "form_along",
    "poly_nonzero_at",
]
